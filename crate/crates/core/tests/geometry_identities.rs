//! Identities of the lifting and cross-section calculus on random inputs.

use metallic::cross_section::{invariance_sides, CrossSection};
use metallic::geometry::{lie_bracket, Tensor11Field};
use metallic::lifts::{complete_lift_t11, complete_lift_vf, vertical_lift_vf, TangentBundleChart};
use metallic::testing::Gen;
use metallic::Chart;

#[test]
fn section_decomposition_for_random_structures() {
    let c = Chart::new(["x", "y"]).unwrap();
    let mut g = Gen::new(21);
    for _ in 0..5 {
        let t = g.poly_t11(&c, 2);
        let cs = CrossSection::new(g.poly_field(&c, 2));
        let (_, sides) = invariance_sides(&t, &cs).unwrap();
        for (lhs, rhs) in sides {
            assert_eq!(lhs, rhs);
        }
    }
}

#[test]
fn lift_brackets() {
    let c = Chart::new(["x", "y", "z"]).unwrap();
    let tm = TangentBundleChart::new(&c);
    let mut g = Gen::new(22);
    for _ in 0..5 {
        let (x, y) = (g.poly_field(&c, 2), g.poly_field(&c, 2));
        let (xc, yc) = (complete_lift_vf(&tm, &x).unwrap(), complete_lift_vf(&tm, &y).unwrap());
        let (xv, yv) = (vertical_lift_vf(&tm, &x).unwrap(), vertical_lift_vf(&tm, &y).unwrap());
        let br = lie_bracket(&x, &y).unwrap();
        assert_eq!(lie_bracket(&xc, &yc).unwrap(), complete_lift_vf(&tm, &br).unwrap());
        assert_eq!(lie_bracket(&xc, &yv).unwrap(), vertical_lift_vf(&tm, &br).unwrap());
        assert!(lie_bracket(&xv, &yv).unwrap().is_zero());
    }
}

#[test]
fn complete_lift_is_multiplicative_and_fixes_identity() {
    let c = Chart::new(["x", "y"]).unwrap();
    let tm = TangentBundleChart::new(&c);
    let mut g = Gen::new(23);
    let id = complete_lift_t11(&tm, &Tensor11Field::identity(&c)).unwrap();
    assert_eq!(id, Tensor11Field::identity(tm.total()));
    for _ in 0..5 {
        let (s, t) = (g.poly_t11(&c, 2), g.poly_t11(&c, 1));
        let x = g.poly_field(&c, 2);
        let lhs = complete_lift_t11(&tm, &s).unwrap().apply(&complete_lift_vf(&tm, &x).unwrap()).unwrap();
        assert_eq!(lhs, complete_lift_vf(&tm, &s.apply(&x).unwrap()).unwrap());
        let st = complete_lift_t11(&tm, &s.compose(&t).unwrap()).unwrap();
        let sc_tc = complete_lift_t11(&tm, &s).unwrap().compose(&complete_lift_t11(&tm, &t).unwrap()).unwrap();
        assert_eq!(st, sc_tc);
    }
}
