//! Birational germ invariants, the two polynomial normal forms, twisting
//! coefficients and the `|a₀|` trichotomy for index-1 surfaces.

use std::fmt;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::chern::{index_from_tip_fraction, tip_multiplicity};
use crate::error::{Error, Result};
use crate::forms::{dloussky_matrix, DlousskyMatrix};
use crate::rational::{json_int, Rational};
use crate::sequence::DlousskySequence;

/// Tolerance on `|a₀| - 1` (relative) and on `|α| - 1` for floating inputs.
pub const UNIT_TOLERANCE: f64 = 1e-12;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GermInvariants {
    /// `(r+s) - (p+q)`
    #[serde(with = "json_int")]
    pub d: BigInt,
    #[serde(rename = "K", with = "json_int")]
    pub k: BigInt,
    pub u: Rational,
    pub v: Rational,
    /// `(-1)^N`
    pub n_parity_sign: i8,
    /// `(l-d)/(r+s-1)`, which equals `t - 1`.
    pub tip_shift: Rational,
}

fn simple_parts(seq: &DlousskySequence) -> Result<(DlousskyMatrix, u64)> {
    let (ks, l) = seq.simple_parts().ok_or_else(|| Error::NotSimple {
        sequence: seq.symbolic(),
        class: seq.classify().to_string(),
    })?;
    Ok((dloussky_matrix(&ks)?, l))
}

pub fn germ_invariants(seq: &DlousskySequence) -> Result<GermInvariants> {
    let (m, l) = simple_parts(seq)?;
    let sign: i8 = if m.ks().len() % 2 == 0 { 1 } else { -1 };
    let l = BigInt::from(l);
    let one = BigInt::one();
    let rs1 = m.r() + m.s() - &one;
    let d = m.r() + m.s() - m.p() - m.q();
    let tip_shift = Rational::new(&l - &d, rs1.clone());
    let k = tip_shift.floor().max(BigInt::zero());
    let sign_big = BigInt::from(sign);
    let u = Rational::new(m.p() + m.s() + m.r() * &l - &one - &sign_big, rs1.clone());
    let v = Rational::new(m.q() + m.r() + m.s() * &l - &one + &sign_big, rs1);
    Ok(GermInvariants {
        d,
        k,
        u,
        v,
        n_parity_sign: sign,
        tip_shift,
    })
}

/// `(r·t - p + 1, s·t - q + 1)`, the slope readings of `u` and `v`.
pub fn uv_from_slopes(seq: &DlousskySequence) -> Result<(Rational, Rational)> {
    let (m, _) = simple_parts(seq)?;
    let t = tip_multiplicity(seq)?;
    let one = Rational::one();
    let u = &t * Rational::from(m.r().clone()) - Rational::from(m.p().clone()) + &one;
    let v = &t * Rational::from(m.s().clone()) - Rational::from(m.q().clone()) + &one;
    Ok((u, v))
}

#[derive(Clone, Debug, PartialEq)]
pub struct GermSpec {
    pub p: u64,
    pub q: u64,
    pub r: u64,
    pub s: u64,
    pub l: u64,
    pub k: u64,
    /// `a_0 … a_(l-1)` followed by `a_(l+K)`.
    pub params: Vec<Complex64>,
    pub generic_first_blowup: bool,
    /// Whether `a_(l+K)` is effective; known only when the caller supplies ε.
    pub extra_parameter_effective: Option<bool>,
}

fn to_u64(value: &BigInt, name: &str) -> Result<u64> {
    value
        .to_u64()
        .ok_or_else(|| Error::ExponentOverflow(format!("{name} = {value}")))
}

pub fn build_germ(seq: &DlousskySequence, params: &[Complex64], generic: bool) -> Result<GermSpec> {
    let (m, l) = simple_parts(seq)?;
    let inv = germ_invariants(seq)?;
    let expected = l as usize + 1;
    if params.len() != expected {
        return Err(Error::ParameterCount {
            expected,
            found: params.len(),
        });
    }
    Ok(GermSpec {
        p: to_u64(m.p(), "p")?,
        q: to_u64(m.q(), "q")?,
        r: to_u64(m.r(), "r")?,
        s: to_u64(m.s(), "s")?,
        l,
        k: to_u64(&inv.k, "K")?,
        params: params.to_vec(),
        generic_first_blowup: generic,
        extra_parameter_effective: None,
    })
}

/// `z^n` by repeated squaring.
fn cpow(z: Complex64, mut n: u64) -> Complex64 {
    let mut base = z;
    let mut acc = Complex64::new(1.0, 0.0);
    while n > 0 {
        if n & 1 == 1 {
            acc *= base;
        }
        base *= base;
        n >>= 1;
    }
    acc
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GermValue {
    pub z1: Complex64,
    pub z2: Complex64,
    /// False when an overflow produced an infinite or NaN component.
    pub finite: bool,
}

impl GermValue {
    pub fn norm(&self) -> f64 {
        self.z1.norm().hypot(self.z2.norm())
    }
}

impl GermSpec {
    /// Marks `a_(l+K)` as effective iff the surface carries a holomorphic
    /// vector field.
    pub fn with_epsilon(mut self, epsilon: u8) -> Self {
        self.extra_parameter_effective = Some(epsilon == 1);
        self
    }

    /// Index of the extra parameter, `l + K`.
    pub fn extra_index(&self) -> u64 {
        self.l + self.k
    }

    fn lower(&self) -> &[Complex64] {
        &self.params[..self.l as usize]
    }

    fn extra(&self) -> Complex64 {
        self.params[self.l as usize]
    }

    pub fn eval(&self, z1: Complex64, z2: Complex64) -> GermValue {
        let (w1, w2) = if self.generic_first_blowup {
            let mut w = z1 * cpow(z2, self.l);
            for (i, a) in self.lower().iter().enumerate() {
                w += a * cpow(z2, i as u64 + 1);
            }
            w += self.extra() * cpow(z2, self.l + self.k + 1);
            (
                cpow(w, self.p) * cpow(z2, self.q),
                cpow(w, self.r) * cpow(z2, self.s),
            )
        } else {
            let m = cpow(z1, self.r) * cpow(z2, self.s);
            let mut first = cpow(z1, self.p + self.r * self.l) * cpow(z2, self.q + self.s * self.l);
            for (i, a) in self.lower().iter().enumerate() {
                first += a * cpow(m, i as u64 + 1);
            }
            first += self.extra() * cpow(m, self.l + self.k + 1);
            (first, m)
        };
        GermValue {
            z1: w1,
            z2: w2,
            finite: w1.is_finite() && w2.is_finite(),
        }
    }

    /// `steps` iterates starting at `(z1, z2)`; the start point is included.
    pub fn orbit(&self, z1: Complex64, z2: Complex64, steps: usize) -> Vec<GermValue> {
        let mut out = Vec::with_capacity(steps + 1);
        let mut current = GermValue {
            z1,
            z2,
            finite: z1.is_finite() && z2.is_finite(),
        };
        out.push(current);
        for _ in 0..steps {
            current = self.eval(current.z1, current.z2);
            out.push(current);
            if !current.finite {
                break;
            }
        }
        out
    }
}

fn monomial(terms: &[(&str, u64)]) -> String {
    let parts: Vec<String> = terms
        .iter()
        .filter(|(_, e)| *e > 0)
        .map(|(v, e)| {
            if *e == 1 {
                v.to_string()
            } else {
                format!("{v}^{e}")
            }
        })
        .collect();
    if parts.is_empty() {
        "1".to_string()
    } else {
        parts.join("*")
    }
}

fn power(base: &str, e: u64) -> String {
    if e == 1 {
        base.to_string()
    } else {
        format!("{base}^{e}")
    }
}

impl fmt::Display for GermSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let extra = self.l + self.k;
        if self.generic_first_blowup {
            let mut w = vec![monomial(&[("z1", 1), ("z2", self.l)])];
            for i in 0..self.l {
                w.push(format!("a{i}*{}", power("z2", i + 1)));
            }
            w.push(format!("a{extra}*{}", power("z2", extra + 1)));
            let w = format!("({})", w.join(" + "));
            let side = |e: u64, z2: u64| {
                let mut parts = Vec::new();
                if e > 0 {
                    parts.push(power(&w, e));
                }
                if z2 > 0 {
                    parts.push(power("z2", z2));
                }
                if parts.is_empty() {
                    "1".to_string()
                } else {
                    parts.join("*")
                }
            };
            write!(
                f,
                "G(z1,z2) = ({}, {})",
                side(self.p, self.q),
                side(self.r, self.s)
            )
        } else {
            let m = monomial(&[("z1", self.r), ("z2", self.s)]);
            let paren = format!("({m})");
            let mut terms = vec![monomial(&[
                ("z1", self.p + self.r * self.l),
                ("z2", self.q + self.s * self.l),
            ])];
            for i in 0..self.l {
                terms.push(format!("a{i}*{}", power(&paren, i + 1)));
            }
            terms.push(format!("a{extra}*{}", power(&paren, extra + 1)));
            write!(f, "G(z1,z2) = ({}, {m})", terms.join(" + "))
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TwistData {
    pub alpha: Complex64,
    pub beta: Complex64,
    /// Sign of the Gauduchon degree of the flat bundle, `-sign(log|α|)`.
    pub gauduchon_degree_sign: i8,
}

fn require_index_one(seq: &DlousskySequence) -> Result<(GermInvariants, u64)> {
    let inv = germ_invariants(seq)?;
    let index = index_from_tip_fraction(seq)?;
    if !index.is_one() || !inv.u.is_integer() {
        return Err(Error::IndexNotOne {
            index: index.to_string(),
            u: inv.u.to_string(),
        });
    }
    let u = to_u64(inv.u.numer(), "u")?;
    Ok((inv, u))
}

/// `α = (-1)^N a₀^u` and `β = 1/(k(S)·α)`.
pub fn twist_alpha(seq: &DlousskySequence, a0: Complex64) -> Result<TwistData> {
    let (inv, u) = require_index_one(seq)?;
    if a0 == Complex64::zero() {
        return Err(Error::ZeroParameter);
    }
    let (m, _) = simple_parts(seq)?;
    let alpha = cpow(a0, u) * f64::from(inv.n_parity_sign);
    let k = (m.r() + m.s()).to_f64().unwrap_or(f64::INFINITY);
    let beta = Complex64::new(1.0, 0.0) / (alpha * k);
    let modulus = alpha.norm();
    let gauduchon_degree_sign = if (modulus - 1.0).abs() <= UNIT_TOLERANCE {
        0
    } else if modulus < 1.0 {
        1
    } else {
        -1
    };
    Ok(TwistData {
        alpha,
        beta,
        gauduchon_degree_sign,
    })
}

/// `a₀` given either in floating point or as an exact rational pair.
#[derive(Clone, Debug, PartialEq)]
pub enum A0 {
    Float(Complex64),
    Exact { re: Rational, im: Rational },
}

impl From<Complex64> for A0 {
    fn from(z: Complex64) -> Self {
        A0::Float(z)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum HermitianClass {
    /// `|a₀| = 1`
    AnticanonicalCandidate,
    /// `|a₀| < 1`
    VectorFieldCandidate,
    /// `|a₀| > 1`
    BiHermitianCandidate,
}

impl fmt::Display for HermitianClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            HermitianClass::AnticanonicalCandidate => "anticanonical candidate",
            HermitianClass::VectorFieldCandidate => "vector field candidate",
            HermitianClass::BiHermitianCandidate => "bi-Hermitian candidate",
        })
    }
}

pub fn classify_hermitian(seq: &DlousskySequence, a0: impl Into<A0>) -> Result<HermitianClass> {
    require_index_one(seq)?;
    let ordering = match a0.into() {
        A0::Float(z) => {
            if z == Complex64::zero() {
                return Err(Error::ZeroParameter);
            }
            let modulus = z.norm();
            if (modulus - 1.0).abs() <= UNIT_TOLERANCE {
                std::cmp::Ordering::Equal
            } else {
                modulus.total_cmp(&1.0)
            }
        }
        A0::Exact { re, im } => {
            let sq = &re * &re + &im * &im;
            if sq.is_zero() {
                return Err(Error::ZeroParameter);
            }
            sq.cmp(&Rational::one())
        }
    };
    Ok(match ordering {
        std::cmp::Ordering::Equal => HermitianClass::AnticanonicalCandidate,
        std::cmp::Ordering::Less => HermitianClass::VectorFieldCandidate,
        std::cmp::Ordering::Greater => HermitianClass::BiHermitianCandidate,
    })
}

/// `|a₀| = 1` within [`UNIT_TOLERANCE`], used by callers that only need the
/// boundary test.
pub fn on_unit_circle(z: Complex64) -> bool {
    (z.norm() - 1.0).abs() <= UNIT_TOLERANCE
}
