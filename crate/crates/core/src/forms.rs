//! Multilinear forms `f`, `P` and the 2×2 Dloussky matrix.
//!
//! `f` is the continuant: `f() = 1`, `f(X1) = X1` and
//! `f(X1..Xn) = Xn·f(X1..Xn-1) + f(X1..Xn-2)`. `P` accumulates
//! `P(X1..Xn) = Xn·f(X1..Xn-1) + P(X1..Xn-1)` starting from `P(X1) = X1`.
//! Everything is evaluated at integer points in arbitrary precision.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::json_int;

/// `f(args)`, with `f() = 1`.
pub fn f_eval<T: Clone + Into<BigInt>>(args: &[T]) -> BigInt {
    // (f_{n-2}, f_{n-1}) seeded with f_{-1} = 0, f_0 = 1
    let (mut prev, mut cur) = (BigInt::zero(), BigInt::one());
    for x in args {
        let next = x.clone().into() * &cur + &prev;
        prev = std::mem::replace(&mut cur, next);
    }
    cur
}

/// `P(args)`; at least one argument is required.
pub fn p_eval<T: Clone + Into<BigInt>>(args: &[T]) -> Result<BigInt> {
    if args.is_empty() {
        return Err(Error::EmptyArguments);
    }
    Ok(p_eval_total(args))
}

/// `P(args)` extended by `P() = 0`, the base the recursion starts from.
pub fn p_eval_total<T: Clone + Into<BigInt>>(args: &[T]) -> BigInt {
    let (mut f_prev, mut f_cur) = (BigInt::zero(), BigInt::one());
    let mut p = BigInt::zero();
    for x in args {
        let x: BigInt = x.clone().into();
        p += &x * &f_cur;
        let next = x * &f_cur + &f_prev;
        f_prev = std::mem::replace(&mut f_cur, next);
    }
    p
}

/// One partial product `(p_j q_j; r_j s_j)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Quad {
    #[serde(with = "json_int")]
    pub p: BigInt,
    #[serde(with = "json_int")]
    pub q: BigInt,
    #[serde(with = "json_int")]
    pub r: BigInt,
    #[serde(with = "json_int")]
    pub s: BigInt,
}

impl Quad {
    pub fn identity() -> Self {
        Quad {
            p: BigInt::one(),
            q: BigInt::zero(),
            r: BigInt::zero(),
            s: BigInt::one(),
        }
    }

    /// Right-multiplies by `(0 1; 1 k)`.
    pub fn step(&self, k: &BigInt) -> Self {
        Quad {
            p: self.q.clone(),
            q: &self.p + k * &self.q,
            r: self.s.clone(),
            s: &self.r + k * &self.s,
        }
    }

    pub fn determinant(&self) -> BigInt {
        &self.p * &self.s - &self.q * &self.r
    }
}

/// Products `(0 1; 1 k_1)···(0 1; 1 k_j)` for every prefix of the singular
/// block lengths.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DlousskyMatrix {
    ks: Vec<u64>,
    partials: Vec<Quad>,
}

impl DlousskyMatrix {
    pub fn ks(&self) -> &[u64] {
        &self.ks
    }

    /// `partials()[j-1]` is the product of the first `j` factors.
    pub fn partials(&self) -> &[Quad] {
        &self.partials
    }

    /// Product of the first `j` factors, `j = 0` giving the identity.
    pub fn partial(&self, j: usize) -> Quad {
        if j == 0 {
            Quad::identity()
        } else {
            self.partials[j - 1].clone()
        }
    }

    pub fn last(&self) -> &Quad {
        self.partials.last().expect("non-empty by construction")
    }

    pub fn p(&self) -> &BigInt {
        &self.last().p
    }
    pub fn q(&self) -> &BigInt {
        &self.last().q
    }
    pub fn r(&self) -> &BigInt {
        &self.last().r
    }
    pub fn s(&self) -> &BigInt {
        &self.last().s
    }

    /// The topological invariant `k(S) = r + s`.
    pub fn k_invariant(&self) -> BigInt {
        self.r() + self.s()
    }
}

pub fn dloussky_matrix(ks: &[u64]) -> Result<DlousskyMatrix> {
    if ks.is_empty() {
        return Err(Error::EmptyArguments);
    }
    let mut partials = Vec::with_capacity(ks.len());
    let mut acc = Quad::identity();
    for &k in ks {
        acc = acc.step(&BigInt::from(k));
        partials.push(acc.clone());
    }
    Ok(DlousskyMatrix {
        ks: ks.to_vec(),
        partials,
    })
}
