# Tests module 