//! Reduction of the Jordan chains at one eigenvalue to flipped orthogonal form.
//!
//! At an eigenvalue `lambda` let `N = A - lambda I` and `B(u, v) = u^T H v`.
//! For H-selfadjoint real `A` the operator `N` is `B`-symmetric on the root
//! subspace, and `B` is nondegenerate there. (For real `lambda` and real
//! chains `B` coincides with the indefinite inner product.)
//!
//! Chains are processed longest first. For the longest remaining length `p`
//! a combination `u` of the chain tops with `c = B(u, N^(p-1) u) != 0` is
//! chosen, its chain is replaced by `(1 + a_1 N + a_2 N^2 + ...) u` so that the
//! chain's Gram matrix becomes `c` times the flip matrix, and every other chain
//! is projected onto the `B`-orthogonal complement of that chain. The
//! projection commutes with `N`, so projected chains stay Jordan chains.
//!
//! Square roots are deferred: each output chain carries its leading value `c`
//! and the caller rescales.

use alloc::boxed::Box;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg::{ExactMatrix, Vector};
use crate::scalar::Scalar;

/// What the chains will eventually be scaled to, which decides whether a
/// leading value is usable.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub(crate) enum Target {
    /// Real eigenvalue: `c` must become `±1` after a real rescaling.
    Signed,
    /// Nonreal eigenvalue: `c` must become `2i` (real canonical form) or `1`
    /// (which lies in the same square class).
    Paired,
}

pub(crate) struct NormalizedChain {
    pub vectors: Vec<Vector>,
    pub lead: Scalar,
}

fn dot(u: &[Scalar], v: &[Scalar]) -> Scalar {
    u.iter().zip(v).filter(|(x, y)| !x.is_zero() && !y.is_zero()).map(|(x, y)| x * y).sum()
}

struct Form<'a> {
    h: &'a ExactMatrix,
}

impl Form<'_> {
    fn eval(&self, u: &[Scalar], v: &[Scalar]) -> Scalar {
        dot(u, &self.h.mul_vec(v).expect("vector length matches H"))
    }
}

/// The factor `a` with `a^2 * lead` equal to the target value, if it lies in
/// the field.
pub(crate) fn scale_factor(lead: &Scalar, target: Target) -> Option<Scalar> {
    if lead.is_zero() {
        return None;
    }
    match target {
        Target::Signed => {
            let q = lead.as_rational()?;
            let magnitude = Scalar::from_rational(num_traits::Signed::abs(q));
            magnitude.inv().ok()?.sqrt_gaussian()
        }
        Target::Paired => (Scalar::from_int(2) * Scalar::i()).checked_div(lead).ok()?.sqrt_gaussian(),
    }
}

fn combine(chains: &[&Vec<Vector>], coeffs: &[Scalar]) -> Vec<Vector> {
    let p = chains[0].len();
    let n = chains[0][0].len();
    (0..p)
        .map(|k| {
            (0..n)
                .map(|r| {
                    chains
                        .iter()
                        .zip(coeffs)
                        .filter(|(_, x)| !x.is_zero())
                        .map(|(c, x)| x * &c[k][r])
                        .sum()
                })
                .collect()
        })
        .collect()
}

fn quadratic(q: &ExactMatrix, x: &[Scalar], y: &[Scalar]) -> Scalar {
    dot(x, &q.mul_vec(y).expect("coefficient length matches"))
}

fn coefficient_set(target: Target) -> Vec<Scalar> {
    let mut set: Vec<Scalar> = [1, -1, 2, -2].iter().map(|&n| Scalar::from_int(n)).collect();
    if target == Target::Paired {
        let i = Scalar::i();
        set.extend([i.clone(), -&i, Scalar::one() + &i, Scalar::one() - &i]);
    }
    set
}

const MAX_SUPPORT: usize = 3;
const MAX_CANDIDATES: usize = 20_000;

/// Candidate coefficient vectors: unit vectors first, then vectors of growing
/// support whose first nonzero coefficient is one.
fn candidates(k: usize, target: Target) -> Vec<Vec<Scalar>> {
    let set = coefficient_set(target);
    let mut out = Vec::new();
    for support in 1..=MAX_SUPPORT.min(k) {
        let mut positions: Vec<usize> = (0..support).collect();
        loop {
            // coefficient tuples for the trailing positions
            let mut digits = alloc::vec![0usize; support - 1];
            loop {
                let mut x = alloc::vec![Scalar::zero(); k];
                x[positions[0]] = Scalar::one();
                for (slot, &d) in digits.iter().enumerate() {
                    x[positions[slot + 1]] = set[d].clone();
                }
                out.push(x);
                if out.len() >= MAX_CANDIDATES {
                    return out;
                }
                let Some(pos) = (0..digits.len()).rev().find(|&s| digits[s] + 1 < set.len()) else { break };
                digits[pos] += 1;
                for d in &mut digits[pos + 1..] {
                    *d = 0;
                }
            }
            let Some(pos) = (0..support).rev().find(|&s| positions[s] < k - support + s) else { break };
            positions[pos] += 1;
            for s in pos + 1..support {
                positions[s] = positions[s - 1] + 1;
            }
        }
    }
    out
}

/// Picks the coefficients of the next chain top. Prefers a combination whose
/// leading value can be rescaled inside the field; failing that, completes an
/// isotropic vector to one with an exactly prescribed value.
fn choose_top(q: &ExactMatrix, target: Target) -> Option<Vec<Scalar>> {
    let k = q.rows();
    let mut isotropic: Option<Vec<Scalar>> = None;
    let mut fallback: Option<Vec<Scalar>> = None;
    for x in candidates(k, target) {
        let value = quadratic(q, &x, &x);
        if value.is_zero() {
            if isotropic.is_none() {
                isotropic = Some(x);
            }
            continue;
        }
        if scale_factor(&value, target).is_some() {
            return Some(x);
        }
        if fallback.is_none() {
            fallback = Some(x);
        }
    }
    if let Some(w) = isotropic {
        let wanted = match target {
            Target::Signed => Scalar::one(),
            Target::Paired => Scalar::from_int(2) * Scalar::i(),
        };
        for j in 0..k {
            let mut z = alloc::vec![Scalar::zero(); k];
            z[j] = Scalar::one();
            let cross = quadratic(q, &w, &z);
            if cross.is_zero() {
                continue;
            }
            // Q(t w + z) = 2 t Q(w, z) + Q(z)
            let t = (&wanted - &quadratic(q, &z, &z)).checked_div(&(&cross * &Scalar::from_int(2))).ok()?;
            return Some(w.iter().zip(&z).map(|(wi, zi)| &(&t * wi) + zi).collect());
        }
    }
    fallback
}

/// Makes the chain's Gram matrix `c` times the flip matrix.
fn normalize_chain(form: &Form<'_>, mut chain: Vec<Vector>) -> Result<NormalizedChain> {
    let p = chain.len();
    let lead = form.eval(&chain[p - 1], &chain[0]);
    if lead.is_zero() {
        return Err(Error::InternalStructureMismatch("degenerate chain top".into()));
    }
    let twice_lead = &lead * &Scalar::from_int(2);
    for j in 1..p {
        let defect = form.eval(&chain[p - 1], &chain[j]);
        if defect.is_zero() {
            continue;
        }
        let alpha = -defect.checked_div(&twice_lead)?;
        let old = chain.clone();
        for k in j..p {
            for (dst, src) in chain[k].iter_mut().zip(&old[k - j]) {
                *dst += &alpha * src;
            }
        }
    }
    for a in 0..p {
        for b in 0..p {
            let expected = if a + b == p - 1 { lead.clone() } else { Scalar::zero() };
            if form.eval(&chain[a], &chain[b]) != expected {
                return Err(Error::InternalStructureMismatch("chain normalization left a defect".into()));
            }
        }
    }
    Ok(NormalizedChain { vectors: chain, lead })
}

/// Removes the `B`-component along a normalized chain.
fn project_out(form: &Form<'_>, v: &mut Vector, chain: &NormalizedChain) {
    let p = chain.vectors.len();
    let inv_lead = chain.lead.inv().expect("lead is nonzero");
    let mut corrections = Vec::with_capacity(p);
    for a in 0..p {
        let coefficient = &form.eval(v, &chain.vectors[p - 1 - a]) * &inv_lead;
        corrections.push(coefficient);
    }
    for (a, coefficient) in corrections.iter().enumerate() {
        if coefficient.is_zero() {
            continue;
        }
        for (dst, src) in v.iter_mut().zip(&chain.vectors[a]) {
            *dst -= coefficient * src;
        }
    }
}

/// Normalizes all chains at one eigenvalue. Input chains are `g_0..g_{p-1}`;
/// the output lists chains longest first, each with its leading value.
pub(crate) fn normalize(h: &ExactMatrix, chains: Vec<Vec<Vector>>, target: Target) -> Result<Vec<NormalizedChain>> {
    let form = Form { h };
    let mut pending = chains;
    pending.sort_by_key(|c| core::cmp::Reverse(c.len()));
    let mut done = Vec::new();
    while !pending.is_empty() {
        let p = pending[0].len();
        let group = pending.iter().take_while(|c| c.len() == p).count();
        let q = ExactMatrix::from_fn(group, group, |i, j| form.eval(&pending[i][p - 1], &pending[j][0]));
        let coeffs = choose_top(&q, target)
            .ok_or_else(|| Error::InternalStructureMismatch("no chain top with nonzero pairing".into()))?;
        let members: Vec<&Vec<Vector>> = pending[..group].iter().collect();
        let combined = combine(&members, &coeffs);
        let replaced = coeffs.iter().position(|x| !x.is_zero()).expect("nonzero coefficients");
        pending.remove(replaced);
        let chain = normalize_chain(&form, combined)?;
        for other in &mut pending {
            for v in other.iter_mut() {
                project_out(&form, v, &chain);
            }
        }
        done.push(chain);
    }
    // leading values must be rescalable, otherwise the canonical basis leaves the field
    if let Some(bad) = done.iter().find(|c| scale_factor(&c.lead, target).is_none()) {
        return Err(Error::NonconstructibleScaling { value: Box::new(bad.lead.clone()) });
    }
    Ok(done)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn candidate_order_starts_with_unit_vectors() {
        let c = candidates(2, Target::Signed);
        assert_eq!(c[0], alloc::vec![Scalar::one(), Scalar::zero()]);
        assert_eq!(c[1], alloc::vec![Scalar::zero(), Scalar::one()]);
        assert_eq!(c[2], alloc::vec![Scalar::one(), Scalar::one()]);
        assert_eq!(c.len(), 2 + 4);
    }

    #[test]
    fn hyperbolic_plane_reaches_prescribed_value() {
        // Q = [[0, 3], [3, 0]] with no unit vector usable: isotropic completion
        let q = ExactMatrix::from_ints(&[[0, 3], [3, 0]]);
        let x = choose_top(&q, Target::Signed).unwrap();
        let v = quadratic(&q, &x, &x);
        assert!(scale_factor(&v, Target::Signed).is_some());
    }

    #[test]
    fn scale_factors() {
        assert!(scale_factor(&Scalar::from_int(4), Target::Signed).is_some());
        assert!(scale_factor(&Scalar::from_int(-2), Target::Signed).is_some());
        assert!(scale_factor(&Scalar::from_int(3), Target::Signed).is_none());
        assert!(scale_factor(&Scalar::from_int(1), Target::Paired).is_some());
        assert!(scale_factor(&Scalar::i(), Target::Paired).is_some());
        assert!(scale_factor(&Scalar::from_int(3), Target::Paired).is_none());
    }
}
