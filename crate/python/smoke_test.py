"""Smoke test for the ideal_space Python extension.

Build and install first:
    maturin build --release -m crates/python/Cargo.toml
    pip install target/wheels/ideal_space-*.whl
"""

import json

import ideal_space as isp


def check(label, ok):
    print(f"[{'PASS' if ok else 'FAIL'}] {label}")
    return ok


def main():
    results = []

    # Hermite interpolation: x^3 at the double point 0 is 0.
    y = isp.WeightedConfig([([0.0], 2)])
    op = isp.InterpolationOperator(y)
    a = op.interpolate(isp.Polynomial(1, [([3], 1.0)]))
    results.append(check("x^3 at {0^2} interpolates to 0", all(abs(c) < 1e-14 for _, c in a.terms())))

    # x^2 at {0, 1} interpolates to x.
    op = isp.InterpolationOperator(isp.WeightedConfig([([0.0], 1), ([1.0], 1)]))
    a = op.interpolate(isp.Polynomial(1, [([2], 1.0)]))
    results.append(check("x^2 at {0, 1} interpolates to x", abs(a.coeff([1]) - 1.0) < 1e-14 and abs(a.coeff([0])) < 1e-14))
    results.append(check("operator JSON round trip", isp.InterpolationOperator.from_json(op.to_json()).to_json() == op.to_json()))

    # Membership: span{x^2} at {0^2} with F = deg < 3 is certified,
    # span{x^2 + x} is rejected on containment.
    p, report = isp.IdealPoint.certify(y, 3, [[0.0, 0.0, 1.0]])
    results.append(check("span{x^2} certified", p.certified and report["verdict"]["status"] == "Certified"))
    report = isp.membership_oracle(y, 3, [[0.0, 1.0, 1.0]])
    results.append(check("span{x^2 + x} rejected on containment", report["verdict"].get("condition") == "containment"))

    # Quotient algebra and spectrum of a curvilinear point in the plane.
    c = isp.IdealPoint.curvilinear([0.0, 0.0], [[1.0, 0.0]], 2, 3)
    q = c.quotient()
    results.append(check("curvilinear quotient has dimension 2", q.dim == 2))
    results.append(check("wspec recovers {(0,0)^2}", c.wspec().distance_to(c.config) < 1e-7))

    three = isp.IdealPoint.from_points([[0.1, 0.2], [-0.5, 0.3], [0.7, -0.4]], 4)
    parts = three.primary_decomposition()
    results.append(check("three points decompose into three certified parts", len(parts) == 3 and all(x.certified for x in parts)))
    results.append(check("ideal point JSON round trip", isp.IdealPoint.from_json(three.to_json()).to_json() == three.to_json()))

    # (t, 0) and (-t, 0) collide along the x axis; the limit is the
    # curvilinear double point f(0) = ∂_x f(0) = 0.
    limit, report = isp.limit([[[0.0, 1.0], [0.0]], [[0.0, -1.0], [0.0]]])
    results.append(check("collision limit certified", report["certified"] and limit.codim == 2))
    results.append(check("collision limit is the curvilinear double point", limit.distance_to(c) < 1e-6))

    probe = isp.probe_injectivity(m=2, d=2, pairs=50)
    results.append(check("injectivity probe separates equal configurations", probe["min_separation"] > 1e-8))

    suites = isp.run_selftest()
    results.append(check("selftest: all criteria pass", all(s["passed"] for s in suites)))

    try:
        isp.WeightedConfig([([0.0], 0)])
        results.append(check("zero weight rejected", False))
    except ValueError:
        results.append(check("zero weight rejected", True))

    print(json.dumps({"passed": sum(results), "total": len(results)}))
    raise SystemExit(0 if all(results) else 1)


if __name__ == "__main__":
    main()
