#!/usr/bin/env python3
# Copyright 2026 The vqesim Authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Regenerate the frozen H2/STO-3G FCIDUMP fixtures under tests/data.

Run once with PySCF available; the outputs are committed and the C++ test
suite never calls PySCF.
"""
import json
import pathlib
import sys

from pyscf import fci, gto, scf
from pyscf.tools import fcidump

BOND_LENGTHS = [0.5, 0.7414, 1.0, 1.5, 2.0]


def main(outdir: pathlib.Path) -> None:
    outdir.mkdir(parents=True, exist_ok=True)
    for r in BOND_LENGTHS:
        mol = gto.M(atom=f"H 0 0 0; H 0 0 {r}", basis="sto-3g", unit="Angstrom", verbose=0)
        mf = scf.RHF(mol).run()
        e_fci = fci.FCI(mf).kernel()[0]
        stem = f"h2_sto3g_{r:.4f}"
        fcidump.from_scf(mf, str(outdir / f"{stem}.fcidump"), tol=1e-15)
        meta = {
            "label": f"r={r:.4f}",
            "bond_length_angstrom": r,
            "basis": "sto-3g",
            "hf_energy": mf.e_tot,
            "fci_energy": e_fci,
        }
        (outdir / f"{stem}.fcidump.meta.json").write_text(json.dumps(meta, indent=2) + "\n")
        print(stem, mf.e_tot, e_fci)


if __name__ == "__main__":
    main(pathlib.Path(sys.argv[1] if len(sys.argv) > 1 else "tests/data"))
