//! Structural predicates with witnesses.
//!
//! These checks only multiply, conjugate and compare matrices. They never call
//! into the canonical-form construction, so they can be used to cross-check it.
//!
//! Witness indices are 1-based and the first failure in row-major order is
//! reported.

use alloc::boxed::Box;
use alloc::format;
use alloc::vec::Vec;
use core::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::layout::{Block, BlockLayout};
use crate::linalg::ExactMatrix;
use crate::scalar::Scalar;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum Check {
    Hermitian,
    Selfadjoint,
    Affiliation,
    Fo,
    Cs,
    Sip,
    Focs,
}

impl Check {
    pub fn name(self) -> &'static str {
        match self {
            Check::Hermitian => "hermitian",
            Check::Selfadjoint => "selfadjoint",
            Check::Affiliation => "affiliation",
            Check::Fo => "fo",
            Check::Cs => "cs",
            Check::Sip => "sip",
            Check::Focs => "focs",
        }
    }
}

/// First violated entry: `value` was found where `expected` was required.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Witness {
    pub check: Check,
    pub i: usize,
    pub j: usize,
    pub value: Scalar,
    pub expected: Scalar,
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} fails at ({}, {}): {} != {}", self.check.name(), self.i, self.j, self.value, self.expected)
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Verdict {
    pub check: Check,
    pub witness: Option<Witness>,
}

impl Verdict {
    fn pass(check: Check) -> Self {
        Verdict { check, witness: None }
    }

    pub fn passed(&self) -> bool {
        self.witness.is_none()
    }
}

/// Outcome of a batch of checks. `witness` comes from the first failing check.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct BasisCertificate {
    pub checks: Vec<(Check, bool)>,
    pub witness: Option<Witness>,
}

impl BasisCertificate {
    pub fn record(&mut self, verdict: Verdict) {
        self.checks.push((verdict.check, verdict.passed()));
        if self.witness.is_none() {
            self.witness = verdict.witness;
        }
    }

    /// Records `focs` as the conjunction of the `fo` and `cs` results.
    pub fn record_focs(&mut self) {
        let fo = self.get(Check::Fo).unwrap_or(false);
        let cs = self.get(Check::Cs).unwrap_or(false);
        self.checks.push((Check::Focs, fo && cs));
    }

    pub fn get(&self, check: Check) -> Option<bool> {
        self.checks.iter().find(|(c, _)| *c == check).map(|&(_, ok)| ok)
    }

    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|&(_, ok)| ok)
    }
}

/// Compares two equally-shaped matrices over the given cells in order.
fn first_difference(
    check: Check,
    found: &ExactMatrix,
    expected: &ExactMatrix,
    cells: impl Iterator<Item = (usize, usize)>,
) -> Verdict {
    for (r, c) in cells {
        if found[(r, c)] != expected[(r, c)] {
            return Verdict {
                check,
                witness: Some(Witness {
                    check,
                    i: r + 1,
                    j: c + 1,
                    value: found[(r, c)].clone(),
                    expected: expected[(r, c)].clone(),
                }),
            };
        }
    }
    Verdict::pass(check)
}

fn row_major(rows: usize, cols: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..rows).flat_map(move |r| (0..cols).map(move |c| (r, c)))
}

/// Lower triangle including the diagonal, row by row. Enough for matrices
/// whose difference is skew-hermitian.
fn lower_triangle(n: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..n).flat_map(|r| (0..=r).map(move |c| (r, c)))
}

fn require_square(m: &ExactMatrix, name: &str) -> Result<()> {
    if m.is_square() {
        Ok(())
    } else {
        Err(Error::DimensionMismatch(format!("{name} must be square, got {}x{}", m.rows(), m.cols())))
    }
}

fn require_size(m: &ExactMatrix, n: usize, name: &str) -> Result<()> {
    if m.rows() == n && m.cols() == n {
        Ok(())
    } else {
        Err(Error::DimensionMismatch(format!("{name} must be {n}x{n}, got {}x{}", m.rows(), m.cols())))
    }
}

pub fn is_hermitian(h: &ExactMatrix) -> Result<Verdict> {
    require_square(h, "H")?;
    let adjoint = h.conj_transpose();
    Ok(first_difference(Check::Hermitian, h, &adjoint, lower_triangle(h.rows())))
}

/// `H A = A* H`, the inversion-free form of `A = H^-1 A* H`.
///
/// Since `H A - A* H` is skew-hermitian for hermitian `H`, only the lower
/// triangle is compared; the witness carries `(H A)_ij` and `(A* H)_ij`.
pub fn is_h_selfadjoint(a: &ExactMatrix, h: &ExactMatrix) -> Result<Verdict> {
    require_square(h, "H")?;
    require_size(a, h.rows(), "A")?;
    if let Some(w) = is_hermitian(h)?.witness {
        return Err(Error::NotHermitian(Box::new(w)));
    }
    if !h.is_invertible() {
        return Err(Error::Singular { rank: h.rank(), size: h.rows() });
    }
    let ha = h.matmul(a)?;
    let ah = a.conj_transpose().matmul(h)?;
    Ok(first_difference(Check::Selfadjoint, &ha, &ah, lower_triangle(h.rows())))
}

/// `T^-1 A T = B` and `T* H T = G`, checked as `A T = T B` and then `T* H T = G`.
pub fn check_affiliation(
    a: &ExactMatrix,
    h: &ExactMatrix,
    b: &ExactMatrix,
    g: &ExactMatrix,
    t: &ExactMatrix,
) -> Result<Verdict> {
    require_square(t, "T")?;
    let n = t.rows();
    for (m, name) in [(a, "A"), (h, "H"), (b, "B"), (g, "G")] {
        require_size(m, n, name)?;
    }
    if !t.is_invertible() {
        return Err(Error::Singular { rank: t.rank(), size: n });
    }
    let similarity = first_difference(Check::Affiliation, &a.matmul(t)?, &t.matmul(b)?, row_major(n, n));
    if !similarity.passed() {
        return Ok(similarity);
    }
    let gram = t.conj_transpose().matmul(h)?.matmul(t)?;
    Ok(first_difference(Check::Affiliation, &gram, g, row_major(n, n)))
}

/// Whether the columns of `t` are a Jordan basis for `j`, i.e. `A T = T J`
/// with `T` invertible; reported under `check`.
pub fn is_jordan_basis(a: &ExactMatrix, t: &ExactMatrix, j: &ExactMatrix, check: Check) -> Result<Verdict> {
    require_square(t, "basis")?;
    let n = t.rows();
    require_size(a, n, "A")?;
    require_size(j, n, "J")?;
    if !t.is_invertible() {
        return Err(Error::Singular { rank: t.rank(), size: n });
    }
    Ok(first_difference(check, &a.matmul(t)?, &t.matmul(j)?, row_major(n, n)))
}

/// Entry `(r, c)` of the sip matrix for `layout`; `signs` holds one sign per
/// real block, pairs always carry `+1`.
fn sip_entry(layout: &BlockLayout, signs: &[i8], r: usize, c: usize) -> Scalar {
    let mut real_index = 0;
    for (start, block) in layout.placed() {
        let width = block.width();
        let sign = match block {
            Block::Real { .. } => {
                real_index += 1;
                signs[real_index - 1]
            }
            Block::Pair { .. } => 1,
        };
        if (start..start + width).contains(&r) {
            let inside = (start..start + width).contains(&c) && (r - start) + (c - start) == width - 1;
            return if inside { Scalar::from_int(sign.into()) } else { Scalar::zero() };
        }
    }
    Scalar::zero()
}

fn expected_sip(layout: &BlockLayout, signs: &[i8]) -> Result<ExactMatrix> {
    if signs.len() != layout.real_block_count() {
        return Err(Error::DimensionMismatch(format!(
            "{} signs for {} real blocks",
            signs.len(),
            layout.real_block_count()
        )));
    }
    let n = layout.dimension();
    Ok(ExactMatrix::from_fn(n, n, |r, c| sip_entry(layout, signs, r, c)))
}

fn gram(t: &ExactMatrix, h: &ExactMatrix) -> Result<ExactMatrix> {
    require_square(t, "basis")?;
    require_size(h, t.rows(), "H")?;
    t.conj_transpose().matmul(h)?.matmul(t)
}

/// `T* H T` equals the sip matrix of `layout` with the given signs.
pub fn is_flipped_orthogonal(t: &ExactMatrix, h: &ExactMatrix, layout: &BlockLayout, signs: &[i8]) -> Result<Verdict> {
    if layout.dimension() != t.cols() {
        return Err(Error::DimensionMismatch(format!(
            "layout of dimension {} for {} columns",
            layout.dimension(),
            t.cols()
        )));
    }
    let expected = expected_sip(layout, signs)?;
    let n = t.rows();
    Ok(first_difference(Check::Fo, &gram(t, h)?, &expected, row_major(n, n)))
}

/// `T* H T` is a sip matrix for `layout` with some choice of signs on the real
/// blocks (read off the top-right corner of each real block).
pub fn is_sip_shaped(t: &ExactMatrix, h: &ExactMatrix, layout: &BlockLayout) -> Result<Verdict> {
    if layout.dimension() != t.cols() {
        return Err(Error::DimensionMismatch(format!(
            "layout of dimension {} for {} columns",
            layout.dimension(),
            t.cols()
        )));
    }
    let g = gram(t, h)?;
    let signs: Vec<i8> = layout
        .placed()
        .filter(|(_, b)| !b.is_pair())
        .map(|(start, b)| {
            let corner = &g[(start, start + b.width() - 1)];
            if *corner == -Scalar::one() { -1 } else { 1 }
        })
        .collect();
    let expected = expected_sip(layout, &signs)?;
    let n = t.rows();
    Ok(first_difference(Check::Sip, &g, &expected, row_major(n, n)))
}

/// For each pair block the right half of the columns equals `gamma` times the
/// conjugate of the left half.
pub fn is_gamma_cs(n: &ExactMatrix, layout: &BlockLayout, gamma: &Scalar) -> Result<Verdict> {
    if gamma.is_zero() {
        return Err(Error::BadGamma);
    }
    if layout.dimension() != n.cols() {
        return Err(Error::DimensionMismatch(format!(
            "layout of dimension {} for {} columns",
            layout.dimension(),
            n.cols()
        )));
    }
    // (right column, left column) for every paired column
    let mut pairs: Vec<(usize, usize)> = layout
        .placed()
        .filter(|(_, b)| b.is_pair())
        .flat_map(|(start, b)| {
            let p = b.size();
            (0..p).map(move |k| (start + p + k, start + k))
        })
        .collect();
    pairs.sort_unstable();
    for r in 0..n.rows() {
        for &(right, left) in &pairs {
            let expected = gamma * &n[(r, left)].conj();
            if n[(r, right)] != expected {
                return Ok(Verdict {
                    check: Check::Cs,
                    witness: Some(Witness { check: Check::Cs, i: r + 1, j: right + 1, value: n[(r, right)].clone(), expected }),
                });
            }
        }
    }
    Ok(Verdict::pass(Check::Cs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::scalar::rat;

    fn pair_layout() -> BlockLayout {
        BlockLayout::new(alloc::vec![Block::Pair { sigma: rat(0), tau: rat(1), size: 2 }])
    }

    #[test]
    fn selfadjointness() {
        let ex = corpus::worked_example();
        assert!(is_h_selfadjoint(&ex.a, &ex.h).unwrap().passed());
        assert!(is_h_selfadjoint(&ExactMatrix::identity(4), &ex.h).unwrap().passed());
        let v = is_h_selfadjoint(&ExactMatrix::from_ints(&[[0, 1], [0, 0]]), &ExactMatrix::identity(2)).unwrap();
        let w = v.witness.unwrap();
        assert_eq!((w.i, w.j, w.value, w.expected), (2, 1, Scalar::zero(), Scalar::one()));
    }

    #[test]
    fn selfadjointness_preconditions() {
        let a = ExactMatrix::identity(2);
        assert!(matches!(is_h_selfadjoint(&a, &ExactMatrix::from_ints(&[[0, 1], [2, 0]])), Err(Error::NotHermitian(_))));
        assert!(matches!(is_h_selfadjoint(&a, &ExactMatrix::from_ints(&[[1, 1], [1, 1]])), Err(Error::Singular { .. })));
        assert!(matches!(is_h_selfadjoint(&ExactMatrix::identity(3), &a), Err(Error::DimensionMismatch(_))));
    }

    #[test]
    fn affiliations() {
        let ex = corpus::worked_example();
        assert!(check_affiliation(&ex.a, &ex.h, &ex.j, &ex.p, &ex.t).unwrap().passed());
        assert!(check_affiliation(&ex.a, &ex.h, &ex.j, &ex.g, &ex.r).unwrap().passed());
        assert!(check_affiliation(&ex.a, &ex.h, &ex.a, &ex.h, &ExactMatrix::identity(4)).unwrap().passed());
        assert!(!check_affiliation(&ex.a, &ex.h, &ex.j, &ex.p, &ex.r).unwrap().passed());
    }

    #[test]
    fn flipped_orthogonality() {
        let ex = corpus::worked_example();
        let layout = pair_layout();
        assert!(is_flipped_orthogonal(&ex.t, &ex.h, &layout, &[]).unwrap().passed());
        assert!(is_flipped_orthogonal(&ex.m, &ex.h, &layout, &[]).unwrap().passed());
        let w = is_flipped_orthogonal(&ex.r, &ex.h, &layout, &[]).unwrap().witness.unwrap();
        assert_eq!((w.i, w.j), (2, 4));
        assert_eq!(w.value, "-3 i".parse().unwrap());
        assert!(!is_sip_shaped(&ex.r, &ex.h, &layout).unwrap().passed());
    }

    #[test]
    fn conjugate_symmetry() {
        let ex = corpus::worked_example();
        let layout = pair_layout();
        let one = Scalar::one();
        assert!(is_gamma_cs(&ex.r, &layout, &one).unwrap().passed());
        assert!(is_gamma_cs(&ex.m, &layout, &one).unwrap().passed());
        assert!(!is_gamma_cs(&ex.m, &layout, &Scalar::i()).unwrap().passed());
        let w = is_gamma_cs(&ex.t, &layout, &one).unwrap().witness.unwrap();
        assert_eq!((w.i, w.j), (1, 4));
        assert_eq!(is_gamma_cs(&ex.t, &layout, &Scalar::zero()), Err(Error::BadGamma));
    }

    #[test]
    fn signed_sip_blocks() {
        let layout = BlockLayout::new(alloc::vec![
            Block::Real { lambda: rat(2), size: 1 },
            Block::Real { lambda: rat(3), size: 1 },
        ]);
        let h = ExactMatrix::from_ints(&[[1, 0], [0, -1]]);
        let t = ExactMatrix::identity(2);
        assert!(is_flipped_orthogonal(&t, &h, &layout, &[1, -1]).unwrap().passed());
        assert!(!is_flipped_orthogonal(&t, &h, &layout, &[1, 1]).unwrap().passed());
        assert!(is_sip_shaped(&t, &h, &layout).unwrap().passed());
    }

    #[test]
    fn certificates_take_the_first_witness() {
        let ex = corpus::worked_example();
        let layout = pair_layout();
        let mut cert = BasisCertificate::default();
        cert.record(is_flipped_orthogonal(&ex.r, &ex.h, &layout, &[]).unwrap());
        cert.record(is_gamma_cs(&ex.r, &layout, &Scalar::i()).unwrap());
        cert.record_focs();
        assert_eq!(cert.get(Check::Focs), Some(false));
        assert_eq!(cert.witness.unwrap().check, Check::Fo);
    }
}
