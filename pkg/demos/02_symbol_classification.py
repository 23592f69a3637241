"""Classifying the maximum set of the symbol.

The large-n behavior of f^(n) is governed by the frequencies where
|symbol| attains its supremum A and by the local Taylor data of
log(symbol/value) there.  Type 1 points (leading coefficient with a real
part) behave like classical random walks; type 2 points (purely imaginary
leading coefficient) produce dispersive, constant-modulus profiles.
"""

import numpy as np

import convpow as cp


def show(name, f):
    sa = cp.analyze(f)
    print(f"{name}: A = {sa.A:.6g}, dominant order m = {sa.m_phi}, "
          f"strong hypothesis: {cp.strong_hypothesis_holds(sa)}")
    for p in sa.omega:
        extra = f", k={p.k}, gamma={p.gamma:.6g}" if p.point_type == "type2" else ""
        print(f"    xi = {p.xi:+.6f}  {p.point_type}  m={p.order}  "
              f"drift={p.drift:+.4g}  beta={p.beta:.6g}{extra}")
    print()


show("lazy walk {0: 1/2, +-1: 1/4}", cp.builtin_example("lazywalk"))
show("heat kernel at imaginary time (ex1)", cp.builtin_example("ex1"))
show("two Airy packets", cp.builtin_example("airy"))
show("three-point (8, 2, -1)", cp.builtin_example("threepoint", 8, 2, -1))

# the moment route gives the same constants: an independent cross-check
f = cp.builtin_example("airy")
a, b = cp.moment_constants(f, np.pi / 2, 3)
print("moment oracle at xi = pi/2: drift =", np.round(a, 12),
      " first nonzero b_k =", np.round(b[1], 12), "(expect 2 and 5i/3)")

# classification is invariant under positive scaling and translates under
# modulation by e^{i theta x}
g = cp.builtin_example("lazywalk").modulated(0.8)
sa = cp.analyze(g)
print("modulated lazy walk: max moved to xi =", round(sa.omega[0].xi, 6),
      "(expect -0.8), beta unchanged:", sa.omega[0].beta)
