"""Convolution powers two ways, and what their size does as n grows.

The n-th convolution power of a finitely supported function can be built
by square-and-multiply over direct convolution, or by a zero-padded FFT
with a pointwise polar power.  The two routes share no code, so their
agreement is a real check.  For a probability distribution the sup norm
decays like n^{-1/2}; the complex-valued examples here do the same or
slower, with the rate set by the order of their symbol's maximum.
"""

import convpow as cp

f = cp.builtin_example("ex1")
print("f supported on [-2, 2]; mass =", cp.total_mass(f))

for n in (2, 16, 100):
    direct = cp.power_direct(f, n).result
    fft = cp.power_dft(f, n).result
    gap = max(abs(direct.value_at(x) - fft.value_at(x))
              for x in range(direct.support_min, direct.support_max + 1))
    print(f"n={n:4d}: support [{direct.support_min}, {direct.support_max}], "
          f"direct-vs-fft gap {gap:.2e}")

print("\nsup norm scaling (expect ~0.798 n^(-1/2) for this example):")
for n in (100, 1000, 10000):
    v, argmax = cp.sup_norm(cp.power_dft(f, n).result)
    print(f"n={n:6d}: ||f^(n)|| = {v:.6f}, sqrt(n)*||f^(n)|| = {v * n ** 0.5:.6f}, "
          f"argmax near {argmax[len(argmax) // 2]}")

print("\nParseval gap at n=50 (power sum vs symbol integral):",
      f"{cp.parseval_gap(f, 50):.2e}")

print("\nreal-argument extension agrees with the power at integers:")
p = cp.power_dft(f, 10).result
for x in (0, 4):
    print(f"  x={x}: extension {cp.evaluate_extension(f, 10, float(x)):.12f} "
          f"vs power {p.value_at(x):.12f}")
