//! The two-dimensional conformal algebra {b, s01, p0, p1, q0, q1}.
//!
//! The reference relations (Euclidean metric δ):
//!
//! ```text
//! [s_μν, p_σ] = g_νσ p_μ − g_μσ p_ν      [b, p_μ] = −p_μ
//! [s_μν, q_σ] = g_νσ q_μ − g_μσ q_ν      [b, q_μ] =  q_μ
//! [q_μ, p_ν]  = 2 (g_μν b + s_μν)
//! ```
//!
//! They hold exactly for the bicomplex spin matrices. Vector-field
//! realizations satisfy them with every `[q_μ, p_ν]` negated, and the real
//! and complex matrix realizations are anti-representations (every relation
//! negated except `[q_μ, p_ν]`). Nothing here normalizes those signs away;
//! a [`SignLedger`] records, per relation, whether it held as written (+1)
//! or negated (−1).

pub mod fields;
pub mod paravector;
pub mod so31;

pub use fields::{
    act, bracket, expected_action, generator, pushforward_from_flat, Realization,
    SampledFields, VectorField,
};
pub use paravector::{paravector_substitute, sine_expansion, tangent_curve, tangent_curve_velocity};
pub use so31::{
    angular_tensor, cn, minkowski_check, sn, so31_pack, MinkTensor, So31Basis, MINKOWSKI,
    SO31_PAIRS,
};

use crate::charts::ChartError;
use serde::{Deserialize, Serialize};
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum AlgebraError {
    #[error("cannot bracket fields of the {0} and {1} realizations")]
    RealizationMismatch(String, String),
    #[error("{realization}: {bracket} matches neither sign (defects {defect_plus:e}, {defect_minus:e})")]
    UnmatchedBracket {
        realization: String,
        bracket: String,
        defect_plus: f64,
        defect_minus: f64,
    },
    #[error("{realization}: {bracket} holds with sign {found} but the ledger predicts {expected}")]
    SignMismatch {
        realization: String,
        bracket: String,
        found: i8,
        expected: i8,
    },
    #[error("{realization} has mixed signs among its {class} relations")]
    NonUniformLedger {
        realization: String,
        class: &'static str,
    },
    #[error("{realization} does not provide generator {generator}")]
    Unsupported {
        realization: String,
        generator: GeneratorId,
    },
    #[error("argument must be non-zero")]
    ZeroArgument,
    #[error(transparent)]
    Chart(#[from] ChartError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GeneratorId {
    B,
    S01,
    P0,
    P1,
    Q0,
    Q1,
}

impl GeneratorId {
    pub const ALL: [GeneratorId; 6] = [
        GeneratorId::B,
        GeneratorId::S01,
        GeneratorId::P0,
        GeneratorId::P1,
        GeneratorId::Q0,
        GeneratorId::Q1,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            GeneratorId::B => "b",
            GeneratorId::S01 => "s01",
            GeneratorId::P0 => "p0",
            GeneratorId::P1 => "p1",
            GeneratorId::Q0 => "q0",
            GeneratorId::Q1 => "q1",
        }
    }

    pub fn momentum(mu: usize) -> GeneratorId {
        [GeneratorId::P0, GeneratorId::P1][mu]
    }

    pub fn special(mu: usize) -> GeneratorId {
        [GeneratorId::Q0, GeneratorId::Q1][mu]
    }

    fn is_momentum(&self) -> bool {
        matches!(self, GeneratorId::P0 | GeneratorId::P1)
    }

    fn is_special(&self) -> bool {
        matches!(self, GeneratorId::Q0 | GeneratorId::Q1)
    }
}

impl fmt::Display for GeneratorId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Real linear combination of generators.
pub type Combination = Vec<(f64, GeneratorId)>;

/// One reference commutation relation `[left, right] = rhs`.
#[derive(Clone, Debug, PartialEq)]
pub struct BracketRelation {
    pub left: GeneratorId,
    pub right: GeneratorId,
    pub rhs: Combination,
}

impl BracketRelation {
    pub fn label(&self) -> String {
        format!("[{},{}]", self.left, self.right)
    }

    /// A `[q_μ, p_ν]` relation.
    pub fn is_special_momentum(&self) -> bool {
        self.left.is_special() && self.right.is_momentum()
    }

    fn generators(&self) -> impl Iterator<Item = GeneratorId> + '_ {
        [self.left, self.right]
            .into_iter()
            .chain(self.rhs.iter().map(|(_, g)| *g))
    }
}

fn delta(a: usize, b: usize) -> f64 {
    if a == b {
        1.0
    } else {
        0.0
    }
}

/// s_μν for μ, ν ∈ {0, 1} as a combination of s01.
fn rotation(mu: usize, nu: usize) -> Combination {
    match (mu, nu) {
        (0, 1) => vec![(1.0, GeneratorId::S01)],
        (1, 0) => vec![(-1.0, GeneratorId::S01)],
        _ => vec![],
    }
}

fn tidy(c: Combination) -> Combination {
    c.into_iter().filter(|(k, _)| *k != 0.0).collect()
}

/// All fifteen brackets of distinct generators, oriented as in the reference relations.
pub fn commutation_relations() -> Vec<BracketRelation> {
    use GeneratorId::*;
    let rel = |left, right, rhs: Combination| BracketRelation {
        left,
        right,
        rhs: tidy(rhs),
    };
    let mut out = vec![rel(B, S01, vec![])];
    for mu in 0..2 {
        out.push(rel(B, GeneratorId::momentum(mu), vec![(-1.0, GeneratorId::momentum(mu))]));
    }
    for mu in 0..2 {
        out.push(rel(B, GeneratorId::special(mu), vec![(1.0, GeneratorId::special(mu))]));
    }
    // [s_01, x_σ] = g_1σ x_0 − g_0σ x_1
    for (family, _) in [(GeneratorId::momentum as fn(usize) -> GeneratorId, "p"), (GeneratorId::special, "q")] {
        for sigma in 0..2 {
            out.push(rel(
                S01,
                family(sigma),
                vec![(delta(1, sigma), family(0)), (-delta(0, sigma), family(1))],
            ));
        }
    }
    out.push(rel(P0, P1, vec![]));
    out.push(rel(Q0, Q1, vec![]));
    for mu in 0..2 {
        for nu in 0..2 {
            let mut rhs = vec![(2.0 * delta(mu, nu), B)];
            rhs.extend(rotation(mu, nu).into_iter().map(|(k, g)| (2.0 * k, g)));
            out.push(rel(GeneratorId::special(mu), GeneratorId::momentum(nu), rhs));
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LedgerEntry {
    pub bracket: String,
    /// +1 when the relation holds as written, −1 when it holds negated.
    pub sign: i8,
    /// Both sides vanish, so either sign fits.
    pub trivial: bool,
    pub defect: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SignLedger {
    pub realization: String,
    pub entries: Vec<LedgerEntry>,
}

impl SignLedger {
    pub fn sign_of(&self, bracket: &str) -> Option<i8> {
        self.entries
            .iter()
            .find(|e| e.bracket == bracket)
            .map(|e| e.sign)
    }

    pub fn max_defect(&self) -> f64 {
        self.entries.iter().fold(0.0, |m, e| m.max(e.defect))
    }

    /// Same brackets and, wherever the bracket is non-trivial on both sides, the same sign.
    pub fn same_signs(&self, other: &SignLedger) -> bool {
        self.compare(other, 1)
    }

    /// Every non-trivial shared bracket carries the opposite sign.
    pub fn negates(&self, other: &SignLedger) -> bool {
        self.compare(other, -1)
    }

    fn compare(&self, other: &SignLedger, factor: i8) -> bool {
        let shared: Vec<_> = self
            .entries
            .iter()
            .filter_map(|e| {
                other
                    .entries
                    .iter()
                    .find(|o| o.bracket == e.bracket)
                    .map(|o| (e, o))
            })
            .collect();
        !shared.is_empty()
            && shared
                .iter()
                .all(|(e, o)| e.trivial || o.trivial || e.sign == factor * o.sign)
    }

    pub fn signs(&self) -> Vec<(String, i8)> {
        self.entries
            .iter()
            .map(|e| (e.bracket.clone(), e.sign))
            .collect()
    }
}

/// A concrete realization of (part of) the algebra in which brackets can be computed.
pub trait LieRealization {
    type Element: Clone;

    fn label(&self) -> String;

    /// `None` for generators the realization does not carry.
    fn generator(&self, g: GeneratorId) -> Option<Self::Element>;

    fn bracket(&self, a: &Self::Element, b: &Self::Element) -> Self::Element;

    fn combine(&self, terms: &[(f64, &Self::Element)]) -> Self::Element;

    /// Componentwise distance, relative to 1 + |b|.
    fn distance(&self, a: &Self::Element, b: &Self::Element) -> f64;

    fn magnitude(&self, a: &Self::Element) -> f64;
}

fn realize<R: LieRealization>(r: &R, c: &Combination) -> Option<R::Element> {
    let parts = c
        .iter()
        .map(|(k, g)| r.generator(*g).map(|e| (*k, e)))
        .collect::<Option<Vec<_>>>()?;
    let refs: Vec<(f64, &R::Element)> = parts.iter().map(|(k, e)| (*k, e)).collect();
    Some(r.combine(&refs))
}

/// Result of comparing a computed bracket against a reference right-hand side.
pub(crate) struct Classified {
    pub sign: i8,
    pub trivial: bool,
    pub defect: f64,
}

pub(crate) fn classify<R: LieRealization>(
    r: &R,
    lhs: &R::Element,
    rhs: &R::Element,
    tol: f64,
) -> Result<Classified, (f64, f64)> {
    let plus = r.distance(lhs, rhs);
    let neg = r.combine(&[(-1.0, rhs)]);
    let minus = r.distance(lhs, &neg);
    let trivial = r.magnitude(rhs) <= tol && r.magnitude(lhs) <= tol;
    if trivial {
        Ok(Classified {
            sign: 1,
            trivial,
            defect: plus,
        })
    } else if plus <= tol {
        Ok(Classified {
            sign: 1,
            trivial,
            defect: plus,
        })
    } else if minus <= tol {
        Ok(Classified {
            sign: -1,
            trivial,
            defect: minus,
        })
    } else {
        Err((plus, minus))
    }
}

/// Computes every reference bracket the realization supports and records its sign.
pub fn structure_table<R: LieRealization>(r: &R, tol: f64) -> Result<SignLedger, AlgebraError> {
    let mut entries = Vec::new();
    for rel in commutation_relations() {
        if rel.generators().any(|g| r.generator(g).is_none()) {
            continue;
        }
        let left = r.generator(rel.left).expect("checked");
        let right = r.generator(rel.right).expect("checked");
        let lhs = r.bracket(&left, &right);
        let rhs = realize(r, &rel.rhs).expect("checked");
        let c = classify(r, &lhs, &rhs, tol).map_err(|(p, m)| AlgebraError::UnmatchedBracket {
            realization: r.label(),
            bracket: rel.label(),
            defect_plus: p,
            defect_minus: m,
        })?;
        entries.push(LedgerEntry {
            bracket: rel.label(),
            sign: c.sign,
            trivial: c.trivial,
            defect: c.defect,
        });
    }
    Ok(SignLedger {
        realization: r.label(),
        entries,
    })
}

/// The ledger every vector-field realization must reproduce: all relations
/// as written except `[q_μ, p_ν]`, which are negated.
pub fn documented_field_signs() -> Vec<(String, i8)> {
    commutation_relations()
        .iter()
        .map(|rel| (rel.label(), if rel.is_special_momentum() { -1 } else { 1 }))
        .collect()
}

/// `|[x,[y,z]] + [y,[z,x]] + [z,[x,y]]|`.
pub fn jacobi_defect<R: LieRealization>(
    r: &R,
    x: &R::Element,
    y: &R::Element,
    z: &R::Element,
) -> f64 {
    let a = r.bracket(x, &r.bracket(y, z));
    let b = r.bracket(y, &r.bracket(z, x));
    let c = r.bracket(z, &r.bracket(x, y));
    r.magnitude(&r.combine(&[(1.0, &a), (1.0, &b), (1.0, &c)]))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fifteen_relations_with_expected_right_hand_sides() {
        use GeneratorId::*;
        let rels = commutation_relations();
        assert_eq!(rels.len(), 15);
        let find = |l, r| rels.iter().find(|x| x.left == l && x.right == r).unwrap().rhs.clone();
        assert_eq!(find(B, P0), vec![(-1.0, P0)]);
        assert_eq!(find(S01, P0), vec![(-1.0, P1)]);
        assert_eq!(find(S01, P1), vec![(1.0, P0)]);
        assert_eq!(find(S01, Q0), vec![(-1.0, Q1)]);
        assert_eq!(find(S01, Q1), vec![(1.0, Q0)]);
        assert_eq!(find(Q0, P0), vec![(2.0, B)]);
        assert_eq!(find(Q0, P1), vec![(2.0, S01)]);
        assert_eq!(find(Q1, P0), vec![(-2.0, S01)]);
        assert_eq!(find(Q1, P1), vec![(2.0, B)]);
        assert!(find(B, S01).is_empty() && find(P0, P1).is_empty() && find(Q0, Q1).is_empty());
        let mut labels: Vec<_> = rels.iter().map(|r| (r.left, r.right)).collect();
        labels.sort();
        labels.dedup();
        assert_eq!(labels.len(), 15);
    }

    #[test]
    fn ledger_comparisons_ignore_trivial_entries() {
        let e = |b: &str, sign, trivial| LedgerEntry {
            bracket: b.into(),
            sign,
            trivial,
            defect: 0.0,
        };
        let a = SignLedger {
            realization: "a".into(),
            entries: vec![e("[b,p0]", 1, false), e("[p0,p1]", 1, true)],
        };
        let b = SignLedger {
            realization: "b".into(),
            entries: vec![e("[b,p0]", -1, false), e("[p0,p1]", 1, true)],
        };
        assert!(a.negates(&b));
        assert!(!a.same_signs(&b));
        assert!(a.same_signs(&a));
    }
}
