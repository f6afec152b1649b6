//! Symbolic results checked against independent numeric computations.

use metallic::symexpr::{differentiate, substitute};
use metallic::testing::Gen;
use metallic::{parse_expr, Chart, MetallicParams, RatFunc};

fn chart() -> Chart {
    Chart::new(["x", "y", "z"]).unwrap()
}

/// Evaluates away from poles, or `None` if any value is unusable.
fn at(f: &RatFunc, p: &[f64], radical: f64) -> Option<f64> {
    f.eval_f64(p, radical).filter(|v| v.is_finite())
}

#[test]
fn derivatives_match_central_differences() {
    let c = chart();
    let mut g = Gen::new(11);
    let mut checked = 0;
    for _ in 0..40 {
        let f = g.rational(&c);
        let p = g.point(3);
        for (i, name) in ["x", "y", "z"].iter().enumerate() {
            let df = differentiate(&f, &c, name).unwrap();
            let h = 1e-5;
            let (mut lo, mut hi) = (p.clone(), p.clone());
            lo[i] -= h;
            hi[i] += h;
            let (Some(a), Some(b), Some(d)) = (at(&f, &lo, 0.0), at(&f, &hi, 0.0), at(&df, &p, 0.0)) else {
                continue;
            };
            if d.abs() > 1e4 {
                continue;
            }
            let fd = (b - a) / (2.0 * h);
            assert!((fd - d).abs() <= 1e-4 * d.abs().max(1.0), "{} at {p:?}: {fd} vs {d}", c.fmt_expr(&f));
            checked += 1;
        }
    }
    assert!(checked > 60);
}

#[test]
fn self_difference_is_canonical_zero() {
    let c = chart();
    let mut g = Gen::new(12);
    for _ in 0..50 {
        let f = g.rational(&c);
        assert!((&f - &f).is_zero());
        let printed = c.fmt_expr(&f);
        let p = MetallicParams::new(1, 1).unwrap();
        assert_eq!(parse_expr(&printed, &c, &p).unwrap(), f, "{printed}");
    }
}

#[test]
fn ring_axioms_on_random_triples() {
    let c = chart();
    let mut g = Gen::new(13);
    for _ in 0..100 {
        let (a, b, d) = (g.rational(&c), g.polyf(&c, 2), g.rational(&c));
        assert_eq!(&(&a + &b) + &d, &a + &(&b + &d));
        assert_eq!(&(&a * &b) * &d, &a * &(&b * &d));
        assert_eq!(&a * &(&b + &d), &(&a * &b) + &(&a * &d));
        assert_eq!(&a * &b, &b * &a);
        if !b.is_zero() {
            assert_eq!(&(&a / &b) * &b, a);
        }
    }
}

#[test]
fn chain_rule_through_substitution() {
    let c = chart();
    let mut g = Gen::new(14);
    for _ in 0..20 {
        let f = g.polyf(&c, 3);
        let u = g.polyf(&c, 2);
        // d/dy f(x, u, z) = f_y(x, u, z) u_y
        let comp = substitute(&f, &c, &[("y", u.clone())]).unwrap();
        let lhs = differentiate(&comp, &c, "y").unwrap();
        let fy = substitute(&differentiate(&f, &c, "y").unwrap(), &c, &[("y", u.clone())]).unwrap();
        let rhs = &fy * &differentiate(&u, &c, "y").unwrap();
        assert_eq!(lhs, rhs);
        // d/dx picks up the direct term too
        let lhs = differentiate(&comp, &c, "x").unwrap();
        let fx = substitute(&differentiate(&f, &c, "x").unwrap(), &c, &[("y", u.clone())]).unwrap();
        let rhs = &fx + &(&fy * &differentiate(&u, &c, "x").unwrap());
        assert_eq!(lhs, rhs);
    }
}

#[test]
fn quadratic_field_values_agree_numerically() {
    let c = Chart::new(["x"]).unwrap();
    let p = MetallicParams::new(3, 1).unwrap();
    let f = parse_expr("(sigma*x + sqrtD)/(x^2 + sigma)", &c, &p).unwrap();
    let s = (13f64).sqrt();
    let sigma = (3.0 + s) / 2.0;
    let x = 0.7;
    let want = (sigma * x + s) / (x * x + sigma);
    assert!((f.eval_f64(&[x], s).unwrap() - want).abs() < 1e-12);
}
