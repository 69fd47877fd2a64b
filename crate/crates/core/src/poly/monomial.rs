use std::cmp::Ordering;

use smallvec::SmallVec;

pub type Exponents = SmallVec<[u32; 6]>;

/// A power product `x_0^e_0 * ... * x_{n-1}^e_{n-1}`. The total degree is
/// cached.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: Exponents,
    degree: u32,
}

impl Monomial {
    pub fn one(nvars: usize) -> Monomial {
        Monomial {
            exps: smallvec::smallvec![0; nvars],
            degree: 0,
        }
    }

    pub fn var(nvars: usize, index: usize) -> Monomial {
        Monomial::var_pow(nvars, index, 1)
    }

    pub fn var_pow(nvars: usize, index: usize, exp: u32) -> Monomial {
        let mut m = Monomial::one(nvars);
        m.exps[index] = exp;
        m.degree = exp;
        m
    }

    pub fn from_exponents(exps: impl IntoIterator<Item = u32>) -> Monomial {
        let exps: Exponents = exps.into_iter().collect();
        let degree = exps.iter().sum();
        Monomial { exps, degree }
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exps
    }

    pub fn exponent(&self, var: usize) -> u32 {
        self.exps[var]
    }

    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn is_one(&self) -> bool {
        self.degree == 0
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.nvars(), other.nvars());
        Monomial {
            exps: self.exps.iter().zip(&other.exps).map(|(a, b)| a + b).collect(),
            degree: self.degree + other.degree,
        }
    }

    pub fn pow(&self, k: u32) -> Monomial {
        Monomial {
            exps: self.exps.iter().map(|a| a * k).collect(),
            degree: self.degree * k,
        }
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.degree <= other.degree && self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    /// `other / self`, if `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Option<Monomial> {
        if !self.divides(other) {
            return None;
        }
        Some(Monomial {
            exps: other.exps.iter().zip(&self.exps).map(|(a, b)| a - b).collect(),
            degree: other.degree - self.degree,
        })
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial::from_exponents(self.exps.iter().zip(&other.exps).map(|(a, b)| *a.max(b)))
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Bit mask used as a cheap necessary condition for divisibility:
    /// `a | b` implies `a.divmask() & !b.divmask() == 0`.
    pub(crate) fn divmask(&self) -> u64 {
        let n = self.exps.len().max(1);
        let bits = (64 / n).clamp(1, 16);
        let mut mask = 0u64;
        for (v, &e) in self.exps.iter().enumerate().take(64) {
            let filled = (e as usize).min(bits);
            let base = v * bits;
            if base >= 64 {
                break;
            }
            for b in 0..filled {
                if base + b < 64 {
                    mask |= 1 << (base + b);
                }
            }
        }
        mask
    }

    /// Inserts a zero exponent for a new variable at `index`.
    pub fn insert_var(&self, index: usize) -> Monomial {
        let mut exps = self.exps.clone();
        exps.insert(index, 0);
        Monomial {
            exps,
            degree: self.degree,
        }
    }

    /// Drops variable `index`; panics if it occurs.
    pub fn remove_var(&self, index: usize) -> Monomial {
        assert_eq!(self.exps[index], 0, "variable {index} still occurs");
        let mut exps = self.exps.clone();
        exps.remove(index);
        Monomial {
            exps,
            degree: self.degree,
        }
    }
}

/// Monomial orders. All of them are total, multiplicative well-orders with
/// `x_0 > x_1 > ... > x_{n-1}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum MonomialOrder {
    Lex,
    #[default]
    GrevLex,
    /// The first `k` variables form an elimination block: monomials are
    /// compared by GrevLex on the block first, then by GrevLex on the rest.
    BlockElim {
        k: usize,
    },
}

impl MonomialOrder {
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match *self {
            MonomialOrder::Lex => a.exps.cmp(&b.exps),
            MonomialOrder::GrevLex => grevlex(&a.exps, a.degree, &b.exps, b.degree),
            MonomialOrder::BlockElim { k } => {
                let k = k.min(a.exps.len());
                let (ha, ta) = a.exps.split_at(k);
                let (hb, tb) = b.exps.split_at(k);
                let da: u32 = ha.iter().sum();
                let db: u32 = hb.iter().sum();
                grevlex(ha, da, hb, db).then_with(|| grevlex(ta, a.degree - da, tb, b.degree - db))
            }
        }
    }
}

fn grevlex(a: &[u32], da: u32, b: &[u32], db: u32) -> Ordering {
    da.cmp(&db).then_with(|| {
        for (x, y) in a.iter().zip(b).rev() {
            if x != y {
                return y.cmp(x);
            }
        }
        Ordering::Equal
    })
}
