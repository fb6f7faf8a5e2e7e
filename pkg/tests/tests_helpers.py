from fractions import Fraction


def omega_pair(mod, p, q):
    """Pair two module vectors through the module's Gram-matrix form."""
    gram = mod.form_data
    out = Fraction(0)
    for r in range(mod.dimension):
        if p[r] == 0:
            continue
        row = gram[r]
        for c in range(mod.dimension):
            if q[c] != 0 and row[c] != 0:
                out += p[r] * row[c] * q[c]
    return out
