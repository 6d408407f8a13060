"""State constructors for polsphere.

This package contains the named state constructors.
Each constructor module defines a get_state_out function.
"""
