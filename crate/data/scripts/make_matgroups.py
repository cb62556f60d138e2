"""Writes the generator files under data/matgroups.

G7: normalizer in SL7 of the Heisenberg group of order 7^3, generated by
  D = diag(z^x), P = cyclic shift e_x -> e_{x+1},
  T = diag(z^(4 x^2)), S = (sqrt(-7)/7) [z^(x y)],
with z = z7 and sqrt(-7) = z + z^2 + z^4 - z^3 - z^5 - z^6.

2A5_dim2: binary icosahedral group in SL2 with
  A = diag(z^3, z^2), B = (1/sqrt 5) [[-(z - z^4), z^2 - z^3], [z^2 - z^3, z - z^4]],
with z = z5 and sqrt 5 = z - z^2 - z^3 + z^4.
"""
import json
from pathlib import Path

OUT = Path(__file__).resolve().parent.parent / "matgroups"


def root(n, e):
    e %= n
    return "1" if e == 0 else (f"z{n}" if e == 1 else f"z{n}^{e}")


def write(name, dim, conductor, description, generators):
    lines = ["{", f'  "dimension": {dim},', f'  "conductor_hint": {conductor},',
             f'  "description": {json.dumps(description)},', '  "generators": [']
    for g, m in enumerate(generators):
        lines.append("    [")
        for i in range(dim):
            row = ", ".join(json.dumps(m[i * dim + j]) for j in range(dim))
            sep = "," if i < dim - 1 else ""
            lines.append(f"      {row}{sep}")
        lines.append("    ]" + ("," if g < len(generators) - 1 else ""))
    lines += ["  ]", "}"]
    (OUT / name).write_text("\n".join(lines) + "\n")


def g7():
    n = 7
    idx = range(n)
    d = [root(n, x) if x == y else "0" for x in idx for y in idx]
    p = ["1" if x == (y + 1) % n else "0" for x in idx for y in idx]
    t = [root(n, 4 * x * x) if x == y else "0" for x in idx for y in idx]
    s = []
    for x in idx:
        for y in idx:
            k = x * y
            plus = " + ".join(root(n, a + k) for a in (1, 2, 4))
            minus = " - ".join(root(n, a + k) for a in (3, 5, 6))
            s.append(f"({plus} - {minus})/7")
    return d, p, t, s


def binary_icosahedral():
    sqrt5 = "(z5 - z5^2 - z5^3 + z5^4)"
    a = ["z5^3", "0", "0", "z5^2"]
    b = [f"-(z5 - z5^4)*{sqrt5}/5", f"(z5^2 - z5^3)*{sqrt5}/5",
         f"(z5^2 - z5^3)*{sqrt5}/5", f"(z5 - z5^4)*{sqrt5}/5"]
    return a, b


if __name__ == "__main__":
    d, p, t, s = g7()
    write("G7.json", 7, 7,
          "Normalizer in SL7 of the Heisenberg group of order 343: D, P, T, S.", [d, p, t, s])
    write("H7.json", 7, 7, "Heisenberg group of order 343: D, P.", [d, p])
    write("2A5_dim2.json", 2, 5, "Binary icosahedral group in SL2.", list(binary_icosahedral()))
