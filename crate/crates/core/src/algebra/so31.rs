//! Rotations of a four-dimensional space built from the conformal generators:
//!
//! ```text
//! s_μ2 = (q_μ − p_μ)/2,   s_μ3 = −(q_μ + p_μ)/2,   s_23 = b,   s_01 = s01
//! [s_μν, s_ρσ] = g_μσ s_νρ − g_μρ s_νσ − g_νσ s_μρ + g_νρ s_μσ
//! ```
//!
//! The second line only closes for g = diag(1, 1, 1, −1).

use super::{
    classify, commutation_relations, AlgebraError, GeneratorId, LedgerEntry, LieRealization,
    SignLedger,
};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

const I: Complex64 = Complex64::new(0.0, 1.0);

/// The Minkowski metric (+, +, +, −).
pub const MINKOWSKI: [f64; 4] = [1.0, 1.0, 1.0, -1.0];

/// Index pairs μ < ν in storage order.
pub const SO31_PAIRS: [(usize, usize); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];

fn pair_index(mu: usize, nu: usize) -> usize {
    SO31_PAIRS
        .iter()
        .position(|&(a, b)| (a, b) == (mu, nu))
        .expect("mu < nu < 4")
}

/// The six rotation generators s_μν, μ < ν.
#[derive(Clone, Debug)]
pub struct So31Basis<E> {
    pub elements: [E; 6],
}

impl<E> So31Basis<E> {
    /// s_μν with its sign: `None` for μ = ν, `(-1, s_νμ)` for μ > ν.
    pub fn get(&self, mu: usize, nu: usize) -> Option<(f64, &E)> {
        match mu.cmp(&nu) {
            std::cmp::Ordering::Equal => None,
            std::cmp::Ordering::Less => Some((1.0, &self.elements[pair_index(mu, nu)])),
            std::cmp::Ordering::Greater => Some((-1.0, &self.elements[pair_index(nu, mu)])),
        }
    }
}

/// Packs the conformal generators of `r` into s_μν; `None` if any generator is missing.
pub fn so31_pack<R: LieRealization>(r: &R) -> Option<So31Basis<R::Element>> {
    use GeneratorId::*;
    let [b, s01, p0, p1, q0, q1] = [B, S01, P0, P1, Q0, Q1].map(|g| r.generator(g));
    let (b, s01, p0, p1, q0, q1) = (b?, s01?, p0?, p1?, q0?, q1?);
    let s_2 = |q: &R::Element, p: &R::Element| r.combine(&[(0.5, q), (-0.5, p)]);
    let s_3 = |q: &R::Element, p: &R::Element| r.combine(&[(-0.5, q), (-0.5, p)]);
    Some(So31Basis {
        elements: [
            s01,
            s_2(&q0, &p0),
            s_3(&q0, &p0),
            s_2(&q1, &p1),
            s_3(&q1, &p1),
            b,
        ],
    })
}

/// Packed generators that are pure combinations of q_μ and p_μ (pairs with one index in {0,1}
/// and one in {2,3}). Brackets among them reduce to `[q, p]` relations.
fn mixes_q_and_p(pair: (usize, usize)) -> bool {
    pair.0 < 2 && pair.1 >= 2
}

fn uniform_sign(ledger: &SignLedger, special_momentum: bool) -> Result<Option<i8>, AlgebraError> {
    let rels = commutation_relations();
    let mut signs = ledger.entries.iter().filter(|e| {
        !e.trivial
            && rels
                .iter()
                .any(|r| r.label() == e.bracket && r.is_special_momentum() == special_momentum)
    });
    let first = signs.next().map(|e| e.sign);
    if signs.any(|e| Some(e.sign) != first) {
        return Err(AlgebraError::NonUniformLedger {
            realization: ledger.realization.clone(),
            class: if special_momentum { "[q, p]" } else { "other" },
        });
    }
    Ok(first)
}

/// Checks the packed bracket relation for all 256 index combinations with the
/// diagonal metric `metric`.
///
/// The sign each bracket must carry is predicted from `conformal_ledger`
/// (the realization's structure table): brackets among q/p mixtures inherit
/// the `[q, p]` sign, all others inherit the remaining sign. Returns the
/// ledger of the fifteen brackets s_A, s_B with A < B.
pub fn minkowski_check<R: LieRealization>(
    r: &R,
    metric: [f64; 4],
    conformal_ledger: &SignLedger,
    tol: f64,
) -> Result<SignLedger, AlgebraError> {
    let basis = so31_pack(r).ok_or_else(|| AlgebraError::Unsupported {
        realization: r.label(),
        generator: GeneratorId::ALL
            .into_iter()
            .find(|g| r.generator(*g).is_none())
            .unwrap_or(GeneratorId::B),
    })?;
    let qp_sign = uniform_sign(conformal_ledger, true)?.unwrap_or(1);
    let other_sign = uniform_sign(conformal_ledger, false)?.unwrap_or(1);

    let brackets: Vec<Vec<R::Element>> = basis
        .elements
        .iter()
        .map(|a| basis.elements.iter().map(|b| r.bracket(a, b)).collect())
        .collect();
    let zero = r.combine(&[]);
    let g = |a: usize, b: usize| if a == b { metric[a] } else { 0.0 };

    let mut entries = Vec::new();
    for mu in 0..4 {
        for nu in 0..4 {
            for rho in 0..4 {
                for sigma in 0..4 {
                    let lhs = match (basis.get(mu, nu), basis.get(rho, sigma)) {
                        (Some((sa, _)), Some((sb, _))) => {
                            let a = pair_index(mu.min(nu), mu.max(nu));
                            let b = pair_index(rho.min(sigma), rho.max(sigma));
                            r.combine(&[(sa * sb, &brackets[a][b])])
                        }
                        _ => zero.clone(),
                    };
                    let terms = [
                        (g(mu, sigma), basis.get(nu, rho)),
                        (-g(mu, rho), basis.get(nu, sigma)),
                        (-g(nu, sigma), basis.get(mu, rho)),
                        (g(nu, rho), basis.get(mu, sigma)),
                    ];
                    let parts: Vec<(f64, &R::Element)> = terms
                        .iter()
                        .filter_map(|(k, s)| s.map(|(sign, e)| (k * sign, e)))
                        .filter(|(k, _)| *k != 0.0)
                        .collect();
                    let rhs = r.combine(&parts);
                    let label = format!("[s{mu}{nu},s{rho}{sigma}]");
                    let c = classify(r, &lhs, &rhs, tol).map_err(|(p, m)| {
                        AlgebraError::UnmatchedBracket {
                            realization: r.label(),
                            bracket: label.clone(),
                            defect_plus: p,
                            defect_minus: m,
                        }
                    })?;
                    let expected = if mixes_q_and_p((mu.min(nu), mu.max(nu)))
                        && mixes_q_and_p((rho.min(sigma), rho.max(sigma)))
                    {
                        qp_sign
                    } else {
                        other_sign
                    };
                    if !c.trivial && c.sign != expected {
                        return Err(AlgebraError::SignMismatch {
                            realization: r.label(),
                            bracket: label,
                            found: c.sign,
                            expected,
                        });
                    }
                    if mu < nu && rho < sigma && (mu, nu) < (rho, sigma) {
                        entries.push(LedgerEntry {
                            bracket: label,
                            sign: c.sign,
                            trivial: c.trivial,
                            defect: c.defect,
                        });
                    }
                }
            }
        }
    }
    Ok(SignLedger {
        realization: r.label(),
        entries,
    })
}

/// All 16 diagonal metrics with entries ±1, in binary order (+ before −).
pub fn diagonal_sign_patterns() -> Vec<[f64; 4]> {
    (0..16u8)
        .map(|bits| std::array::from_fn(|k| if bits >> (3 - k) & 1 == 1 { -1.0 } else { 1.0 }))
        .collect()
}

/// cn υ = (υ + 1/υ)/2.
pub fn cn(u: Complex64) -> Result<Complex64, AlgebraError> {
    nonzero(u).map(|u| (u + u.inv()) / 2.0)
}

/// sn υ = (υ − 1/υ)/(2i).
pub fn sn(u: Complex64) -> Result<Complex64, AlgebraError> {
    nonzero(u).map(|u| (u - u.inv()) / (2.0 * I))
}

fn nonzero(u: Complex64) -> Result<Complex64, AlgebraError> {
    if u.norm() == 0.0 || !u.is_finite() {
        Err(AlgebraError::ZeroArgument)
    } else {
        Ok(u)
    }
}

/// Multipliers M_μν with s_μν = M_μν υ∂ᵤ on the υ-line.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct MinkTensor {
    pub entries: [[Complex64; 4]; 4],
}

impl MinkTensor {
    pub fn get(&self, mu: usize, nu: usize) -> Complex64 {
        self.entries[mu][nu]
    }

    /// max |M_μν + M_νμ|.
    pub fn antisymmetry_defect(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for mu in 0..4 {
            for nu in 0..4 {
                worst = worst.max((self.entries[mu][nu] + self.entries[nu][mu]).norm());
            }
        }
        worst
    }
}

pub fn angular_tensor(u: Complex64) -> Result<MinkTensor, AlgebraError> {
    let (c, s) = (cn(u)?, sn(u)?);
    let z = Complex64::new(0.0, 0.0);
    let one = Complex64::new(1.0, 0.0);
    Ok(MinkTensor {
        entries: [
            [z, I, I * s, -c],
            [-I, z, -I * c, -s],
            [-I * s, I * c, z, one],
            [c, s, -one, z],
        ],
    })
}
