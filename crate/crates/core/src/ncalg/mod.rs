//! Free *-algebras over `ℚ[q, q⁻¹]` and normal forms modulo quadratic
//! rewrite systems.

mod gen;
mod poly;
mod rewrite;
mod tensor;

pub use gen::{render_word, star_word, Gen, Word};
pub use poly::NCPoly;
pub use rewrite::{interreduce, mono, RewriteSystem, Rule, WordOrder, DEFAULT_BUDGET};
pub use tensor::Tensor;

/// `nc_normalize` under the given system.
pub fn nc_normalize(e: &NCPoly, rs: &RewriteSystem) -> crate::Result<NCPoly> {
    rs.normalize(e)
}

/// `nc_mul`: concatenate, then normalize.
pub fn nc_mul(a: &NCPoly, b: &NCPoly, rs: &RewriteSystem) -> crate::Result<NCPoly> {
    rs.mul(a, b)
}

pub fn nc_star(e: &NCPoly) -> NCPoly {
    e.star()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeffring::LaurentPoly;
    use crate::error::Error;
    use proptest::prelude::*;

    fn p(s: &str) -> NCPoly {
        s.parse().unwrap()
    }

    #[test]
    fn star_reverses_and_conjugates() {
        assert_eq!(p("x1").star(), p("xb1"));
        assert_eq!(p("q*x2*x1").star(), p("q*xb1*xb2"));
        assert_eq!(p("alpha*gamma").star(), p("gammab*alphab"));
    }

    fn toy() -> RewriteSystem {
        // commuting-up-to-q plane: y x -> q x y
        let x = Gen::X(1);
        let y = Gen::X(2);
        let order = WordOrder::graded_lex(&[x, y]);
        RewriteSystem::new("plane", order, vec![Rule::new([y, x], NCPoly::term(vec![x, y], LaurentPoly::q_pow(1)))])
            .unwrap()
    }

    #[test]
    fn quantum_plane_normal_form() {
        let rs = toy();
        assert_eq!(rs.normalize(&p("x2*x2*x1")).unwrap(), p("q^2*x1*x2*x2"));
        assert_eq!(rs.normalize(&p("x1*x2")).unwrap(), p("x1*x2"));
    }

    #[test]
    fn rejects_increasing_rule() {
        let x = Gen::X(1);
        let y = Gen::X(2);
        let order = WordOrder::graded_lex(&[x, y]);
        let err = RewriteSystem::new("bad", order, vec![Rule::new([x, y], NCPoly::word(vec![y, x]))]).unwrap_err();
        assert!(matches!(err, Error::NonDecreasingRule { .. }));
    }

    #[test]
    fn foreign_generator_rejected() {
        assert!(matches!(toy().normalize(&p("t")), Err(Error::ForeignGenerator(_))));
    }

    #[test]
    fn budget_guard_fires() {
        let rs = toy().with_budget(3);
        let err = rs.normalize(&p("x2*x2*x2*x1*x1*x1")).unwrap_err();
        assert!(matches!(err, Error::BudgetExceeded { budget: 3, .. }));
    }

    #[test]
    fn rule_orientation_from_identity() {
        let order = WordOrder::graded_lex(&[Gen::X(1), Gen::X(2)]);
        let r = Rule::from_identity(&p("x1*x2"), &p("q*x2*x1"), &order).unwrap();
        assert_eq!(r.to_string(), "x2*x1 -> q^-1*x1*x2");
    }

    fn arb_word() -> impl Strategy<Value = Word> {
        let gens = vec![Gen::X(1), Gen::X(2), Gen::XB(1), Gen::XB(2), Gen::T, Gen::A, Gen::BBar];
        prop::collection::vec(prop::sample::select(gens), 0..5)
    }

    fn arb_poly() -> impl Strategy<Value = NCPoly> {
        prop::collection::vec((arb_word(), -3i64..4, -3i32..4), 0..5).prop_map(|ts| {
            let mut out = NCPoly::zero();
            for (w, c, k) in ts {
                out.add_term(w, LaurentPoly::mono(c, k));
            }
            out
        })
    }

    proptest! {
        #[test]
        fn star_is_involutive(e in arb_poly()) {
            prop_assert_eq!(e.star().star(), e);
        }

        #[test]
        fn star_is_antimultiplicative(a in arb_poly(), b in arb_poly()) {
            prop_assert_eq!(a.mul_free(&b).star(), b.star().mul_free(&a.star()));
        }

        #[test]
        fn render_parse_roundtrip(e in arb_poly()) {
            let back: NCPoly = e.to_string().parse().unwrap();
            prop_assert_eq!(back, e);
        }
    }
}
