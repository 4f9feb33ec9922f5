import os
import sys

os.environ.setdefault("ENGINE_BIN", "%s -m gridhack" % sys.executable)
