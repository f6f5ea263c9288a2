use freemult::algebra::{Field, Matrix, Monomial, PolyRing, Polynomial, Rational, Scalar};
use freemult::arrangement::MultiArrangement;
use freemult::cli::{random_grid_spec, scan_cell, check_grid};
use freemult::derivation::{degree_component, Derivation};
use freemult::extension::{build_extension, normalize_translation, translate, verify_extension, ExtensionSpec};
use freemult::x3::{hilbert_burch, LinearPower};
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use rand::SeedableRng;

const Q: Field = Field::Rationals;

fn to_big(r: &Rational) -> BigRational {
    BigRational::new(r.numer(), r.denom())
}

fn big_int() -> impl Strategy<Value = i64> {
    prop_oneof![-50i64..50, any::<i64>().prop_map(|x| x / 3), Just(i64::MAX), Just(i64::MIN + 1)]
}

fn rational() -> impl Strategy<Value = Rational> {
    (big_int(), big_int().prop_filter("nonzero", |d| *d != 0)).prop_map(|(n, d)| Rational::new(n, d).unwrap())
}

fn prime() -> impl Strategy<Value = u64> {
    prop_oneof![Just(2u64), Just(3), Just(5), Just(7), Just(11), Just(13), Just(101), Just(65_521)]
}

fn poly(ring: &PolyRing, terms: &[(u16, u16, u16, i64)]) -> Polynomial {
    terms.iter().fold(ring.zero(), |acc, &(a, b, c, k)| {
        &acc + &ring.monomial(Monomial::from_exponents(&[a, b, c]), ring.field().from_i64(k))
    })
}

fn terms() -> impl Strategy<Value = Vec<(u16, u16, u16, i64)>> {
    prop::collection::vec((0u16..4, 0u16..4, 0u16..4, -9i64..10), 0..6)
}

fn int_matrix(rows: usize, cols: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    prop::collection::vec(prop::collection::vec(-4i64..5, cols), rows)
}

fn matrix(field: Field, rows: &[Vec<i64>]) -> Matrix<Scalar> {
    Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| field.from_i64(x)).collect()).collect())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rational_matches_bigrational(a in rational(), b in rational()) {
        let (x, y) = (to_big(&a), to_big(&b));
        prop_assert_eq!(to_big(&(&a + &b)), &x + &y);
        prop_assert_eq!(to_big(&(&a - &b)), &x - &y);
        prop_assert_eq!(to_big(&(&a * &b)), &x * &y);
        if !b.is_zero() {
            prop_assert_eq!(to_big(&(&a / &b)), &x / &y);
        }
        prop_assert_eq!(a.cmp(&b), x.cmp(&y));
        prop_assert_eq!(a.to_string().parse::<Rational>().unwrap(), a);
    }

    #[test]
    fn prime_field_inverses(p in prime(), v in any::<i64>()) {
        let f = Field::Prime(p);
        let a = f.from_i64(v);
        let expected = v.rem_euclid(p as i64);
        prop_assert_eq!(a.clone(), f.from_i64(expected));
        if let Some(inv) = a.inv() {
            prop_assert!((&a * &inv).is_one());
        } else {
            prop_assert!(a.is_zero());
        }
    }

    #[test]
    fn polynomial_ring_axioms(p in prop_oneof![Just(0u64), prime()], f in terms(), g in terms(), h in terms()) {
        let field = if p == 0 { Q } else { Field::Prime(p) };
        let ring = PolyRing::standard(field, 3).unwrap();
        let (f, g, h) = (poly(&ring, &f), poly(&ring, &g), poly(&ring, &h));
        prop_assert_eq!(&f * &g, &g * &f);
        prop_assert_eq!(&(&f * &g) * &h, &f * &(&g * &h));
        prop_assert_eq!(&f * &(&g + &h), &(&f * &g) + &(&f * &h));
        prop_assert_eq!(ring.parse(&f.to_string()).unwrap(), f.clone());
        if !g.is_zero() {
            let prod = &f * &g;
            let (q, r) = prod.div_rem(&g).unwrap();
            prop_assert!(r.is_zero());
            prop_assert_eq!(q, f);
        }
    }

    #[test]
    fn substitution_is_a_ring_map(f in terms(), g in terms(), t in int_matrix(3, 3)) {
        let ring = PolyRing::standard(Q, 3).unwrap();
        let (f, g) = (poly(&ring, &f), poly(&ring, &g));
        let t = matrix(Q, &t);
        prop_assume!(!t.det().unwrap().is_zero());
        let lhs = (&f * &g).substitute_linear(&t).unwrap();
        let rhs = &f.substitute_linear(&t).unwrap() * &g.substitute_linear(&t).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn rank_nullity(p in prop_oneof![Just(0u64), prime()], rows in int_matrix(4, 6)) {
        let field = if p == 0 { Q } else { Field::Prime(p) };
        let m = matrix(field, &rows);
        let kernel = m.kernel_basis();
        prop_assert_eq!(m.rank() + kernel.len(), 6);
        for v in &kernel {
            prop_assert!(m.mul_vec(v).iter().all(Scalar::is_zero));
        }
        prop_assert_eq!(m.transpose().rank(), m.rank());
    }

    #[test]
    fn determinants_multiply(a in int_matrix(4, 4), b in int_matrix(4, 4)) {
        let (a, b) = (matrix(Q, &a), matrix(Q, &b));
        let ab = a.mul(&b).unwrap();
        prop_assert_eq!(ab.det().unwrap(), &a.det().unwrap() * &b.det().unwrap());
        if let Ok(inv) = a.inverse() {
            prop_assert_eq!(a.mul(&inv).unwrap(), Matrix::identity(Q, 4));
        } else {
            prop_assert!(a.det().unwrap().is_zero());
        }
    }

    #[test]
    fn hilbert_burch_unit_rows(p1 in 1u32..6, p2 in 1u32..6, p3 in 1u32..6, alpha in prop_oneof![Just(-1i64), Just(2), Just(3), Just(-5)]) {
        let ring = PolyRing::standard(Q, 3).unwrap();
        let forms = [[1, 0, 0], [0, 1, 0], [1, -alpha, 0]].map(|f| f.map(|c| Q.from_i64(c)).to_vec());
        let powers = [p1, p2, p3];
        let lp: [LinearPower; 3] = std::array::from_fn(|i| LinearPower { form: forms[i].clone(), power: powers[i] });
        let hb = hilbert_burch(&ring, &lp).unwrap();
        prop_assert_eq!(hb.degrees[0] + hb.degrees[1], p1 + p2 + p3);
        for i in 0..3 {
            let others: u32 = powers.iter().sum::<u32>() - powers[i];
            // g_i is redundant exactly when its power reaches others - 1
            prop_assert_eq!(hb.has_unit_in_row(i), powers[i] + 1 >= others, "row {}", i);
        }
    }
}

fn simple_arrangement() -> impl Strategy<Value = MultiArrangement> {
    prop::collection::vec(prop::collection::vec(-3i64..4, 3), 3..8).prop_filter_map("simple, essential", |rows| {
        let refs: Vec<&[i64]> = rows.iter().map(Vec::as_slice).collect();
        let a = MultiArrangement::from_integer_forms(Q, &refs).ok()?;
        (a.rank() == 3).then_some(a)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn lattice_invariants(a in simple_arrangement()) {
        let chi = a.lattice().char_poly();
        prop_assert_eq!(chi.eval(1), 0);
        prop_assert_eq!(chi.coeffs()[2], -(a.len() as i64));
        prop_assert_eq!(chi.coeffs()[3], 1);
        for h in 0..a.len() {
            let r = a.restriction(h).unwrap();
            prop_assert_eq!(r.arrangement.total_multiplicity() as usize, a.len() - 1);
            prop_assert_eq!(r.fibers.iter().map(Vec::len).sum::<usize>(), a.len() - 1);
        }
        prop_assert_eq!(MultiArrangement::from_json(&a.to_json()).unwrap(), a);
    }

    #[test]
    fn derivation_module_is_a_module(a in simple_arrangement(), mult in prop::collection::vec(1u32..3, 8), d in 1u32..4) {
        let a = a.with_multiplicities(&mult[..a.len()]).unwrap();
        let ring = a.ring();
        if a.is_simple() {
            prop_assert!(Derivation::euler(&ring).is_member(&a).unwrap());
        }
        for theta in degree_component(&a, d) {
            prop_assert!(theta.is_member(&a).unwrap());
            for i in 0..3 {
                prop_assert!(theta.mul_poly(&ring.var(i)).unwrap().is_member(&a).unwrap());
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn methods_agree_on_random_cells(
        p in prop_oneof![Just(5u64), Just(7), Just(11), Just(13)],
        a in 2i64..13,
        m in prop::collection::vec(1u32..4, 6),
    ) {
        let f = Field::Prime(p);
        let alpha = f.from_i64(a);
        prop_assume!(!alpha.is_zero() && !alpha.is_one());
        let cell = scan_cell(&alpha, &m, true).unwrap();
        prop_assert!(!cell.disagrees(), "{:?}", cell);
    }

    #[test]
    fn translations_do_not_change_the_verdict(s in prop::collection::vec((-9i64..10, 1i64..5), 3)) {
        let spec = ExtensionSpec::new(Q.from_i64(-1), vec![Q.one()]).unwrap();
        let a = build_extension(&spec).unwrap();
        let shift: [Scalar; 3] = std::array::from_fn(|i| Q.from_rational(&Rational::new(s[i].0, s[i].1).unwrap()).unwrap());
        let moved = translate(&a, &shift).unwrap();
        prop_assert!(verify_extension(&moved, 9).unwrap().free);
        let (back, _) = normalize_translation(&moved, &spec.alpha).unwrap();
        prop_assert_eq!(back.forms(), a.forms());
    }

    #[test]
    fn random_grids_are_consistent(seed in any::<u64>(), p in prop_oneof![Just(7u64), Just(11), Just(13)]) {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let spec = random_grid_spec(Field::Prime(p), 4, &mut rng).unwrap();
        let g = check_grid(spec).unwrap();
        prop_assert!(g.consistent(), "{:?}", g);
    }
}

#[test]
fn big_rational_round_trip() {
    let r = Rational::new(i64::MAX, 3).unwrap();
    let sq = &r * &r;
    assert_eq!(to_big(&sq), to_big(&r) * to_big(&r));
    assert_eq!(sq.denom(), BigInt::from(9));
}
