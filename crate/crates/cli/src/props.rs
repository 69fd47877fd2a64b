//! Randomized self-checks of the Groebner layer: division re-expansion,
//! idempotence, S-polynomial reduction and syzygy re-expansion.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use traceideal::groebner::{buchberger, normal_form, s_polynomial, syzygy_basis};
use traceideal::poly::{poly_divmod, Term};
use traceideal::{Field, FieldElement, FreeModuleVector, ModuleOrder, Monomial, MonomialOrder, PolyRing, Polynomial};

fn random_poly(rng: &mut ChaCha8Rng, ring: &Arc<PolyRing>, terms: usize, max_deg: u32) -> Polynomial {
    let n = ring.nvars();
    let field = ring.field().clone();
    let ts: Vec<Term> = (0..rng.gen_range(1..=terms))
        .map(|_| {
            let mut exps = vec![0u32; n];
            for _ in 0..rng.gen_range(0..=max_deg) {
                exps[rng.gen_range(0..n)] += 1;
            }
            let coeff = match &field {
                Field::Rational => FieldElement::rational(rng.gen_range(-5..=5), rng.gen_range(1..=3)),
                f => f.from_i64(rng.gen_range(-50..=50)),
            };
            Term {
                coeff,
                mon: Monomial::from_exponents(exps),
            }
        })
        .collect();
    Polynomial::from_terms(ring, ts)
}

/// Runs at least `min_cases` cases; returns the count and failure messages.
pub fn run(seed: u64, min_cases: usize) -> (usize, Vec<String>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let rings = [
        PolyRing::new(["x", "y", "z"], Field::Rational),
        PolyRing::new(["x", "y", "z"], Field::prime(32003).expect("prime")),
        PolyRing::new(["x", "y"], Field::prime(7).expect("prime")),
    ];
    let orders = [
        MonomialOrder::GrevLex,
        MonomialOrder::Lex,
        MonomialOrder::BlockElim { k: 1 },
    ];
    let mut failures = Vec::new();
    let mut cases = 0;
    while cases < min_cases {
        let ring = &rings[rng.gen_range(0..rings.len())];
        let order = orders[rng.gen_range(0..orders.len())];
        match cases % 3 {
            0 => {
                let f = random_poly(&mut rng, ring, 6, 5);
                let ds: Vec<Polynomial> = (0..rng.gen_range(1..=3))
                    .map(|_| random_poly(&mut rng, ring, 3, 3))
                    .filter(|d| !d.is_zero())
                    .collect();
                if ds.is_empty() {
                    continue;
                }
                let Ok((qs, r)) = poly_divmod(&f, &ds, order) else {
                    failures.push(format!("division of {f} failed"));
                    continue;
                };
                let back = qs.iter().zip(&ds).fold(r.clone(), |acc, (q, d)| &acc + &(q * d));
                if back != f {
                    failures.push(format!("division of {f} does not re-expand"));
                }
                let reducible = r.terms().iter().any(|t| {
                    ds.iter()
                        .any(|d| d.leading_term(order).is_some_and(|l| l.mon.divides(&t.mon)))
                });
                if reducible {
                    failures.push(format!("remainder {r} of {f} is reducible"));
                }
            }
            1 => {
                let gens: Vec<Polynomial> = (0..rng.gen_range(1..=3))
                    .map(|_| random_poly(&mut rng, ring, 3, 3))
                    .collect();
                let gb = buchberger(&gens, order);
                if buchberger(&gb, order) != gb {
                    failures.push(format!("basis of {gens:?} is not idempotent"));
                }
                for i in 0..gb.len() {
                    for j in i + 1..gb.len() {
                        let s = s_polynomial(&gb[i], &gb[j], order).expect("nonzero basis elements");
                        if !normal_form(&s, &gb, order).is_zero() {
                            failures.push(format!("S({}, {}) does not reduce to 0", gb[i], gb[j]));
                        }
                    }
                }
                if gens.iter().any(|g| !normal_form(g, &gb, order).is_zero()) {
                    failures.push(format!("a generator of {gens:?} is not in its basis"));
                }
            }
            _ => {
                let rank = rng.gen_range(1..=2);
                let gens: Vec<FreeModuleVector> = (0..rng.gen_range(1..=3))
                    .map(|_| {
                        let entries = (0..rank).map(|_| random_poly(&mut rng, ring, 2, 2)).collect();
                        FreeModuleVector::new(ring, entries).expect("same ring")
                    })
                    .collect();
                let syz = match syzygy_basis(&gens, &ModuleOrder::default()) {
                    Ok(s) => s,
                    Err(e) => {
                        failures.push(format!("syzygies failed: {e}"));
                        continue;
                    }
                };
                for s in &syz {
                    for row in 0..rank {
                        let total = s
                            .entries()
                            .iter()
                            .zip(&gens)
                            .fold(Polynomial::zero(ring), |acc, (c, g)| &acc + &(c * &g.entries()[row]));
                        if !total.is_zero() {
                            failures.push(format!("syzygy {s} does not vanish"));
                        }
                    }
                }
            }
        }
        cases += 1;
    }
    (cases, failures)
}
