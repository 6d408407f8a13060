"""Column containers for tabular results and their CSV/JSON writers."""
import abc
import io
import json

import numpy as np

from .constants import INTEGER_FORMAT, REAL_FORMAT
from .exceptions import PolSphereExceptionBadParameterValue, PolSphereExceptionBadSeriesData, \
    PolSphereExceptionDataSeriesNonFound


def _emit(text, target, newline=None):
    """Return text when target is None, else write it to a path or an open file."""
    if target is None:
        return text
    if hasattr(target, 'write'):
        target.write(text)
    else:
        with open(target, 'w', encoding='utf-8', newline=newline) as f:
            f.write(text)
    return None


class DataSeries(abc.ABC):
    """Base class for column-oriented results (Q fields, multipole records, area tables).

    Columns are equal-length numpy arrays, reachable as ``series['name']`` or
    ``series.name``. Integer indices and slices select rows and return views.

    Example:
        >>> table = AreaTable(K=[0, 1, 2], area=[0.0796, 0.0597, 0.0040])
        >>> print(table.area)
        [0.0796 0.0597 0.004 ]
    """

    # None disables the check
    REQUIRED_COLUMNS = None
    ALLOWED_COLUMNS = None

    @abc.abstractmethod
    def column_types(self):
        """Column name -> numpy dtype, in output order."""

    def __init__(self, metadata=None, **columns):
        """Build the series from named columns.

        Args:
            metadata: Optional JSON-compatible dict carried along with the columns
            **columns: Column name -> values (list, tuple, numpy array)

        Raises:
            PolSphereExceptionBadParameterValue: For a column without a declared type
            PolSphereExceptionBadSeriesData: For missing, unexpected or ragged columns
        """
        declared = self.column_types()
        self._metadata = dict(metadata or {})
        self._data = {}
        for name, values in columns.items():
            if name not in declared:
                raise PolSphereExceptionBadParameterValue(f"Unknown column type for '{name}'")
            self._data[name] = np.atleast_1d(np.asarray(values, dtype=declared[name]))
        self._check_columns()

    def _check_columns(self):
        present = set(self._data)
        if self.ALLOWED_COLUMNS is not None:
            unexpected = sorted(present - set(self.ALLOWED_COLUMNS))
            if unexpected:
                raise PolSphereExceptionBadSeriesData(f"Unknown column: {unexpected[0]}")
        if self.REQUIRED_COLUMNS is not None:
            missing = [name for name in self.REQUIRED_COLUMNS if name not in present]
            if missing:
                raise PolSphereExceptionBadSeriesData(f"Missing required column: {missing[0]}")

        lengths = {name: len(values) for name, values in self._data.items()}
        if len(set(lengths.values())) > 1:
            details = ', '.join(f'{name}={length}' for name, length in lengths.items())
            raise PolSphereExceptionBadSeriesData(f"Arrays have different lengths: {details}")

    @property
    def columns(self):
        """Column names in insertion (output) order."""
        return list(self._data)

    @property
    def metadata(self):
        """JSON-compatible metadata attached to the result."""
        return self._metadata

    def __len__(self):
        for values in self._data.values():
            return len(values)
        return 0

    def __getitem__(self, key):
        """Column by name, or a row selection by int or slice.

        Raises:
            PolSphereExceptionDataSeriesNonFound: If the column does not exist
            IndexError: If an int index is out of range
            TypeError: For any other key type
        """
        if isinstance(key, str):
            try:
                return self._data[key]
            except KeyError:
                raise PolSphereExceptionDataSeriesNonFound(key) from None

        if isinstance(key, int):
            size = len(self)
            row = key + size if key < 0 else key
            if not 0 <= row < size:
                raise IndexError(f"Index {key} is out of range for length {size}")
            key = slice(row, row + 1)

        if isinstance(key, slice):
            return self._with_rows(key)

        raise TypeError(f"Unsupported key type: {type(key).__name__}")

    def _with_rows(self, rows):
        """Copy of this object over row views; subclass state (grid, k_max) is shared."""
        clone = object.__new__(type(self))
        clone.__dict__.update(self.__dict__)
        clone._data = {name: values[rows] for name, values in self._data.items()}
        clone._metadata = dict(self._metadata)
        return clone

    @property
    def writeable(self):
        """Writeable flag of the columns (None for an empty object)."""
        for values in self._data.values():
            return values.flags.writeable
        return None

    @writeable.setter
    def writeable(self, value):
        for values in self._data.values():
            values.flags.writeable = value

    def footer_rows(self):
        """Extra CSV lines written after the data rows."""
        return []

    def to_csv(self, target=None):
        """Write the columns as CSV with a header line.

        Reals use 17 significant digits, integers are written verbatim.

        Args:
            target: Path or writable text file; None returns the CSV as a string

        Returns:
            str or None
        """
        arrays = list(self._data.values())
        formats = [INTEGER_FORMAT if np.issubdtype(values.dtype, np.integer) else REAL_FORMAT for values in arrays]
        rows = np.column_stack([values.astype(object) for values in arrays]) if arrays else np.empty((0, 0))
        buffer = io.StringIO()
        np.savetxt(buffer, rows, fmt=formats, delimiter=',', header=','.join(self.columns), comments='')
        buffer.writelines(line + '\n' for line in self.footer_rows())
        return _emit(buffer.getvalue(), target, newline='')

    def to_json(self, target=None):
        """Write the columns and the metadata as JSON.

        Args:
            target: Path or writable text file; None returns the JSON as a string

        Returns:
            str or None
        """
        document = {
            'columns': {name: values.tolist() for name, values in self._data.items()},
            'metadata': self._metadata,
        }
        return _emit(json.dumps(document, indent=2) + '\n', target)

    def __getattr__(self, name):
        if name.startswith('_') or name not in self.__dict__.get('_data', {}):
            raise AttributeError(f"'{type(self).__name__}' object has no attribute '{name}'")
        return self._data[name]

    def __repr__(self):
        return f"{type(self).__name__}({', '.join(self._data)}; {len(self)} rows)"


class MultipoleRecords(DataSeries):
    """Flat multipole records: doubled spin S2 = 2S, order K, component q, value re + i im."""

    REQUIRED_COLUMNS = ['S2', 'K', 'q', 're', 'im']
    ALLOWED_COLUMNS = REQUIRED_COLUMNS

    def column_types(self):
        return {'S2': np.int64, 'K': np.int64, 'q': np.int64, 're': np.float64, 'im': np.float64}


class AreaTable(DataSeries):
    """Per-multipole effective areas; the CSV ends with a `total,<A>` row."""

    REQUIRED_COLUMNS = ['K', 'area']
    ALLOWED_COLUMNS = REQUIRED_COLUMNS

    def column_types(self):
        return {'K': np.int64, 'area': np.float64}

    def footer_rows(self):
        if 'total_area' not in self._metadata:
            return []
        return ['total,' + REAL_FORMAT % self._metadata['total_area']]


class CoherentSweep(DataSeries):
    """Coherent-state effective areas A_K as a function of K, one block of rows per spin."""

    REQUIRED_COLUMNS = ['S', 'K', 'area']
    ALLOWED_COLUMNS = REQUIRED_COLUMNS

    def column_types(self):
        return {'S': np.float64, 'K': np.int64, 'area': np.float64}
