import os
import sys

# In-tree runs point at the built extension; installed wheels just import.
core_dir = os.environ.get("BIPHOTON_CORE_DIR")
if core_dir:
    sys.path.insert(0, core_dir)
