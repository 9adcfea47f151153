"""Resource caps and knobs, loadable from a flat key=value file."""

from dataclasses import dataclass, fields


@dataclass
class Config:
    # Hard ceiling on dense (x, y, t) grid cells allocated by the psi map.
    max_dense_cells: int = 4_000_000
    # Largest factor-degree bound delta accepted without an explicit override.
    max_delta: int = 3
    # Budget on points drawn from the sum-of-univariates projection grids.
    su_budget: int = 30_000
    # Budget on pairs drawn from the constant-degree projection oracle.
    oracle_points: int = 5_000
    # Degree bound used when sizing the split isolation scheme for the
    # certifying polynomial (its analytic value 2*delta^5 is unreachable at
    # desk scale; the capped instance is one rung of the scheme ladder).
    psi_g_degree_cap: int = 2
    # Stop the sparse-factor search after this many consecutive projection
    # pairs whose bivariate factors are all accounted for (desk-scale
    # heuristic; soundness is unaffected, only completeness can degrade).
    su_stall: int = 250
    # Raise CapError instead of sampling a grid prefix when a budget binds.
    strict_caps: bool = False
    # Worker threads for the loops declared order-independent.
    jobs: int = 1

    @classmethod
    def from_file(cls, path):
        values = {}
        names = {f.name: f.type for f in fields(cls)}
        with open(path) as fh:
            for lineno, raw in enumerate(fh, 1):
                line = raw.split("#", 1)[0].strip()
                if not line:
                    continue
                if "=" not in line:
                    raise ValueError("%s:%d: expected key=value" % (path, lineno))
                key, value = (part.strip() for part in line.split("=", 1))
                if key not in names:
                    raise ValueError("%s:%d: unknown key %r" % (path, lineno, key))
                if names[key] in ("bool", bool):
                    values[key] = value.lower() in ("1", "true", "yes", "on")
                else:
                    values[key] = int(value)
        return cls(**values)


DEFAULT = Config()
