//! Dimension counts for deformations of the pair `(S, D)`.
//!
//! Everything here is a closed-form integer in `b`, the regular total `l`,
//! and the caller-supplied vector-field flag `ε`. The surface data only
//! enters through the index check for `ε = 1` and through `η`.

use std::fmt;

use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::chern::{index_from_tip_fraction, solve_adjunction, tip_multiplicity};
use crate::error::{Error, Result};
use crate::graph::build_dual_graph;
use crate::rational::{json_int_opt, Rational};
use crate::sequence::DlousskySequence;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DeformationReport {
    pub b: u64,
    pub l_total: u64,
    pub epsilon: u8,
    pub eta: u8,
    /// `χ(Θ_S) = 2b`
    pub chi_tangent: i64,
    /// `h¹ - h⁰` of the log tangent sheaf before adding ε; equals `l`.
    pub chi_log: i64,
    pub h1_log: u64,
    #[serde(rename = "h1_theta_minus_D")]
    pub h1_theta_minus_d: u64,
    pub h1_normal: u64,
    #[serde(rename = "h0_theta_D")]
    pub h0_theta_d: u64,
    /// Index used for the `ε = 1` check; `None` when it is not computable
    /// (Enoki, or a nodal Inoue-Hirzebruch graph).
    #[serde(with = "json_int_opt")]
    pub index: Option<BigInt>,
    pub via_double_cover: bool,
}

fn check_epsilon(epsilon: u8) -> Result<()> {
    if epsilon > 1 {
        return Err(Error::InvalidEpsilon(epsilon));
    }
    Ok(())
}

/// Index plus whether some tip has multiplicity 1, from whichever route
/// applies to the sequence.
fn index_and_unit_tip(seq: &DlousskySequence) -> (Option<BigInt>, bool) {
    if seq.is_simple() {
        let t = tip_multiplicity(seq).expect("simple");
        let index = index_from_tip_fraction(seq).expect("simple");
        return (Some(index), t == Rational::one());
    }
    match solve_adjunction(&build_dual_graph(seq)) {
        Ok(m) => {
            let graph = build_dual_graph(seq);
            let unit_tip = graph.tips().iter().any(|&i| m.values[i] == Rational::one());
            (Some(m.index), unit_tip)
        }
        Err(_) => (None, false),
    }
}

pub fn deformation_report(seq: &DlousskySequence, epsilon: u8) -> Result<DeformationReport> {
    check_epsilon(epsilon)?;
    let (index, unit_tip) = index_and_unit_tip(seq);
    if epsilon == 1 {
        if let Some(index) = &index {
            if !index.is_one() {
                return Err(Error::EpsilonInconsistent {
                    index: index.to_string(),
                });
            }
        }
    }
    let b = seq.b2() as u64;
    let l = seq.regular_total() as u64;
    let via_double_cover = seq.is_nodal_family();
    let chi_log = if via_double_cover {
        // the unramified double cover doubles every Euler characteristic
        let doubled = deformation_report(&seq.doubled(), 0)?;
        doubled.chi_log / 2
    } else {
        l as i64
    };
    let eta = if epsilon == 1 && unit_tip { 1 } else { 0 };
    Ok(DeformationReport {
        b,
        l_total: l,
        epsilon,
        eta,
        chi_tangent: 2 * b as i64,
        chi_log,
        h1_log: chi_log as u64 + u64::from(epsilon),
        h1_theta_minus_d: b + l - u64::from(eta),
        h1_normal: 2 * b - l,
        h0_theta_d: b,
        index,
        via_double_cover,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ModulusTag {
    #[serde(rename = "no moduli")]
    NoModuli,
    #[serde(rename = "one modulus")]
    OneModulus,
}

impl fmt::Display for ModulusTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ModulusTag::NoModuli => "no moduli",
            ModulusTag::OneModulus => "one modulus",
        })
    }
}

/// One tag per expanded entry: regular-block entries each carry a modulus.
pub fn moduli_explanation(seq: &DlousskySequence) -> Vec<ModulusTag> {
    (0..seq.b2())
        .map(|i| {
            if seq.is_regular_position(i) {
                ModulusTag::OneModulus
            } else {
                ModulusTag::NoModuli
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seq(text: &str) -> DlousskySequence {
        text.parse().unwrap()
    }

    #[test]
    fn worked_example() {
        let r = deformation_report(&seq("[s2 r2]"), 0).unwrap();
        assert_eq!(r.h1_log, 2);
        assert_eq!(r.h1_theta_minus_d, 6);
        assert_eq!(r.eta, 0);
        assert_eq!(r.h1_normal, 6);
        assert_eq!(r.chi_tangent, 8);
        let r = deformation_report(&seq("[s2 r2]"), 1).unwrap();
        assert_eq!((r.h1_log, r.eta, r.h1_theta_minus_d), (3, 1, 5));
    }

    #[test]
    fn inoue_hirzebruch_is_log_rigid() {
        let r = deformation_report(&seq("[s1 s1]"), 0).unwrap();
        assert_eq!(r.h1_log, 0);
        assert_eq!(r.l_total, 0);
    }

    #[test]
    fn enoki_has_b_dimensional_family() {
        for eps in [0, 1] {
            let r = deformation_report(&seq("[r5]"), eps).unwrap();
            assert_eq!(r.h1_log, 5 + u64::from(eps));
            assert_eq!(r.index, None);
            assert_eq!(r.eta, 0);
        }
    }

    #[test]
    fn nodal_family_goes_through_the_double_cover() {
        for b in 2..8 {
            let s = seq(&format!("[s{} r1]", b - 1));
            let r = deformation_report(&s, 0).unwrap();
            assert!(r.via_double_cover);
            assert_eq!(r.h1_log, 1);
            let doubled = deformation_report(&s.doubled(), 0).unwrap();
            assert_eq!(doubled.chi_log, 2 * r.chi_log);
        }
        assert_eq!(deformation_report(&seq("[s1 r1]"), 1).unwrap().h1_log, 2);
    }

    #[test]
    fn epsilon_needs_index_one() {
        assert!(matches!(
            deformation_report(&seq("[s1 s1 r2]"), 1),
            Err(Error::EpsilonInconsistent { .. })
        ));
        assert_eq!(
            deformation_report(&seq("[s2 r2]"), 2),
            Err(Error::InvalidEpsilon(2))
        );
    }

    #[test]
    fn moduli_tags() {
        use ModulusTag::*;
        assert_eq!(
            moduli_explanation(&seq("[s2 r2]")),
            [NoModuli, NoModuli, OneModulus, OneModulus]
        );
        assert!(moduli_explanation(&seq("[s1 s1]"))
            .iter()
            .all(|t| *t == NoModuli));
        assert!(moduli_explanation(&seq("[r3]"))
            .iter()
            .all(|t| *t == OneModulus));
    }
}
