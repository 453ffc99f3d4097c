"""Benchmark on a large DNA corpus
===================================

Writes a random sigma=4 corpus and eight patterns of length 32 to a temporary
directory, then calls ``packmatch bench``. Pass the corpus length as the
first argument; the default is ten million characters.
"""

# %%
import subprocess
import sys
import tempfile
from pathlib import Path

import numpy as np

n = int(sys.argv[1]) if len(sys.argv) > 1 else 10_000_000
rng = np.random.default_rng(7)
corpus = np.frombuffer(b"acgt", dtype=np.uint8)[rng.integers(0, 4, n)].tobytes()
starts = rng.choice(n - 40, 8, replace=False)
patterns = b"".join(corpus[s:s + 32] + b"\n" for s in starts)

# %%
with tempfile.TemporaryDirectory() as tmp:
    pfile, tfile = Path(tmp, "patterns"), Path(tmp, "corpus")
    pfile.write_bytes(patterns)
    tfile.write_bytes(corpus)
    cmd = [sys.executable, "-m", "packmatch", "bench", "--patterns", str(pfile),
           "--text", str(tfile), "--engines", "acsim,ac", "--repeat", "1"]
    print(subprocess.run(cmd, check=True, capture_output=True, text=True).stdout)
