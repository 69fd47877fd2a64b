use std::sync::Arc;

use proptest::prelude::*;
use traceideal::catalog::{family, Params};
use traceideal::groebner::{buchberger, normal_form};
use traceideal::parse::{parse_matrix, parse_polynomial};
use traceideal::poly::Term;
use traceideal::trace::intersect_all;
use traceideal::{Field, FieldElement, Ideal, Monomial, MonomialOrder, PolyMatrix, PolyRing, Polynomial, RingContext};

fn ring(field: Field) -> Arc<PolyRing> {
    PolyRing::new(["x", "y", "z"], field)
}

fn fields() -> impl Strategy<Value = Field> {
    prop_oneof![
        Just(Field::Rational),
        Just(Field::GaussianRational),
        Just(Field::prime(101).unwrap()),
    ]
}

fn coeff(field: &Field, re: i64, im: i64, den: i64) -> FieldElement {
    match field {
        Field::Rational => FieldElement::rational(re, den),
        Field::GaussianRational => {
            let i = field.imaginary_unit().unwrap();
            FieldElement::rational(re, den)
                .coerce(field)
                .unwrap()
                .add(&i.mul(&FieldElement::rational(im, den).coerce(field).unwrap()))
        }
        f => f.from_i64(re),
    }
}

type RawPoly = Vec<(i64, i64, i64, Vec<u32>)>;

fn raw_poly(max_terms: usize, max_exp: u32) -> impl Strategy<Value = RawPoly> {
    proptest::collection::vec(
        (-9i64..10, -3i64..4, 1i64..5, proptest::collection::vec(0..=max_exp, 3)),
        0..max_terms,
    )
}

fn build(ring: &Arc<PolyRing>, raw: &RawPoly) -> Polynomial {
    let terms = raw.iter().map(|(re, im, den, e)| Term {
        coeff: coeff(ring.field(), *re, *im, *den),
        mon: Monomial::from_exponents(e.clone()),
    });
    Polynomial::from_terms(ring, terms)
}

fn orders() -> impl Strategy<Value = MonomialOrder> {
    prop_oneof![
        Just(MonomialOrder::Lex),
        Just(MonomialOrder::GrevLex),
        Just(MonomialOrder::BlockElim { k: 1 })
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn polynomials_round_trip(field in fields(), raw in raw_poly(6, 4)) {
        let r = ring(field);
        let f = build(&r, &raw);
        let back = parse_polynomial(&f.to_string(), &r).unwrap();
        prop_assert_eq!(back, f);
    }

    #[test]
    fn matrices_round_trip(field in fields(), entries in proptest::collection::vec(raw_poly(3, 2), 6)) {
        let r = ring(field);
        let m = PolyMatrix::from_rows(&r, entries.chunks(3).map(|row| row.iter().map(|e| build(&r, e)).collect()).collect()).unwrap();
        prop_assert_eq!(parse_matrix(&m.to_string(), &r).unwrap(), m);
    }

    #[test]
    fn ideals_round_trip(field in fields(), gens in proptest::collection::vec(raw_poly(3, 2), 1..3)) {
        let r = ring(field);
        let ctx = RingContext::new(&r, vec![parse_polynomial("z^2+x^3+y^3", &r).unwrap()]).unwrap();
        let i = Ideal::new(&ctx, gens.iter().map(|g| build(&r, g)).collect()).unwrap();
        let back = ctx.ideal(&i.to_string()).unwrap();
        prop_assert_eq!(back.to_string(), i.to_string());
        prop_assert_eq!(back, i);
    }

    /// Combinations of the generators reduce to zero; Lex and GrevLex bases
    /// agree on membership.
    #[test]
    fn combinations_are_members(
        order in orders(),
        gens in proptest::collection::vec(raw_poly(3, 2), 1..4),
        mult in proptest::collection::vec(raw_poly(3, 2), 3),
        probe in raw_poly(3, 3),
    ) {
        let r = ring(Field::Rational);
        let gens: Vec<Polynomial> = gens.iter().map(|g| build(&r, g)).collect();
        let gb = buchberger(&gens, order);
        let combo = gens.iter().zip(&mult).fold(Polynomial::zero(&r), |acc, (g, m)| &acc + &(&build(&r, m) * g));
        prop_assert!(normal_form(&combo, &gb, order).is_zero());
        let lex = buchberger(&gens, MonomialOrder::Lex);
        let grev = buchberger(&gens, MonomialOrder::GrevLex);
        let p = build(&r, &probe);
        prop_assert_eq!(
            normal_form(&p, &lex, MonomialOrder::Lex).is_zero(),
            normal_form(&p, &grev, MonomialOrder::GrevLex).is_zero()
        );
    }
}

// Monomial ideals in k[x, y, z] have a combinatorial description that serves
// as an oracle: membership is divisibility by a generator, the intersection
// is generated by pairwise lcms, and I : m by g / gcd(g, m).

fn monomials(max: usize) -> impl Strategy<Value = Vec<Vec<u32>>> {
    proptest::collection::vec(proptest::collection::vec(0u32..4, 3), 1..max)
}

fn mono_poly(r: &Arc<PolyRing>, e: &[u32]) -> Polynomial {
    Polynomial::monomial(r, r.field().one(), Monomial::from_exponents(e.iter().copied()))
}

fn in_monomial_ideal(gens: &[Vec<u32>], m: &[u32]) -> bool {
    gens.iter().any(|g| g.iter().zip(m).all(|(a, b)| a <= b))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn monomial_ideal_oracle(a in monomials(4), b in monomials(4), probes in monomials(12)) {
        let r = ring(Field::Rational);
        let ctx = RingContext::new(&r, Vec::new()).unwrap();
        let ideal = |gens: &[Vec<u32>]| Ideal::new(&ctx, gens.iter().map(|e| mono_poly(&r, e)).collect()).unwrap();
        let (ia, ib) = (ideal(&a), ideal(&b));
        let lcms: Vec<Vec<u32>> =
            a.iter().flat_map(|g| b.iter().map(move |h| g.iter().zip(h).map(|(p, q)| *p.max(q)).collect())).collect();
        prop_assert_eq!(ia.intersection(&ib).unwrap(), ideal(&lcms));
        let sum = ia.sum(&ib).unwrap();
        for p in &probes {
            let f = mono_poly(&r, p);
            prop_assert_eq!(ia.contains(&f).unwrap(), in_monomial_ideal(&a, p));
            prop_assert_eq!(sum.contains(&f).unwrap(), in_monomial_ideal(&a, p) || in_monomial_ideal(&b, p));
        }
        let m = &b[0];
        let colon: Vec<Vec<u32>> = a.iter().map(|g| g.iter().zip(m).map(|(p, q)| p.saturating_sub(*q)).collect()).collect();
        prop_assert_eq!(ia.quotient(&ideal(std::slice::from_ref(m))).unwrap(), ideal(&colon));
    }

    /// (I : J) J is contained in I, in a quotient ring.
    #[test]
    fn quotient_times_divisor(a in proptest::collection::vec(raw_poly(2, 2), 1..3), b in raw_poly(2, 2)) {
        let r = ring(Field::prime(101).unwrap());
        let ctx = RingContext::new(&r, vec![parse_polynomial("z^2+x^2*y", &r).unwrap()]).unwrap();
        let i = Ideal::new(&ctx, a.iter().map(|g| build(&r, g)).collect()).unwrap();
        let f = build(&r, &b);
        let q = i.quotient(&Ideal::new(&ctx, vec![f.clone()]).unwrap()).unwrap();
        for g in q.generators() {
            prop_assert!(i.contains(&(g * &f)).unwrap(), "{} * {} not in {}", g, f, i);
        }
        prop_assert!(i.is_subset_of(&q).unwrap());
    }

    /// The MCM test ideal does not depend on the order of intersection.
    #[test]
    fn intersection_order_is_irrelevant(
        (name, n) in prop_oneof![Just(("Dn-dim2", 6)), Just(("An-dim2", 5)), Just(("E7", 0))],
        perm in Just((0..16usize).collect::<Vec<_>>()).prop_shuffle(),
    ) {
        let spec = family(name).unwrap();
        let params = if n > 0 { Params::single("n", n) } else { Params::none() };
        let inst = spec.instantiate(&params, None).unwrap();
        let traces: Vec<Ideal> = inst.non_free().unwrap().into_iter().map(|t| t.trace).collect();
        let base = inst.mcm_test_ideal().unwrap();
        let order = perm.iter().filter(|&&k| k < traces.len());
        let shuffled = intersect_all(order.map(|&k| Ok(traces[k].clone())), &inst.ctx).unwrap();
        prop_assert_eq!(shuffled, base);
    }
}
