//! Canonical pairs of a real H-selfadjoint matrix.
//!
//! - [`fo_canonical`]: a flipped orthogonal Jordan basis `T` with
//!   `T^-1 A T = J` and `T* H T = P`, the sip matrix carrying the sign
//!   characteristic. Chains at conjugate eigenvalues are conjugate to each
//!   other, so the basis is also conjugate symmetric with `gamma = 1`.
//! - [`real_canonical`]: a real basis `R` with `R^-1 A R = J_R` (real Jordan
//!   form) and `R^T H R = P`.
//! - [`focs_basis`]: `N = R S`, flipped orthogonal and `i`-conjugate symmetric
//!   at the same time.
//!
//! All three start from the same normalized chains (see [`normalize`]).

mod normalize;

use alloc::boxed::Box;
use alloc::format;
use alloc::string::ToString;
use alloc::vec::Vec;
use core::cmp::Ordering;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::layout::{Block, BlockLayout};
use crate::linalg::{ExactMatrix, Vector};
use crate::scalar::{ratio, Rational, Scalar};
use crate::spectral::{self, JordanSpec};
use crate::verify::{self, Check};

use normalize::{normalize, scale_factor, Target};

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum PairKind {
    /// `J` is the complex Jordan form.
    Complex,
    /// `J` is the real Jordan form and the basis is real.
    Real,
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum BasisKind {
    FlippedOrthogonal,
    RealCanonical,
    /// Flipped orthogonal and `i`-conjugate symmetric.
    IFocs,
}

/// Block diagonal matrix of signed flip matrices `eps * [[0, .., 1], .., [1, .., 0]]`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SipMatrix {
    sizes: Vec<usize>,
    signs: Vec<i8>,
}

impl SipMatrix {
    pub fn new(sizes: Vec<usize>, signs: Vec<i8>) -> Result<Self> {
        if sizes.len() != signs.len() {
            return Err(Error::BadSignature(format!("{} signs for {} blocks", signs.len(), sizes.len())));
        }
        if let Some(s) = signs.iter().find(|&&s| s != 1 && s != -1) {
            return Err(Error::BadSignature(format!("sign {s} is not ±1")));
        }
        if sizes.contains(&0) {
            return Err(Error::BadSignature("blocks must have positive size".to_string()));
        }
        Ok(SipMatrix { sizes, signs })
    }

    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    pub fn signs(&self) -> &[i8] {
        &self.signs
    }

    pub fn to_matrix(&self) -> ExactMatrix {
        let blocks: Vec<ExactMatrix> = self
            .sizes
            .iter()
            .zip(&self.signs)
            .map(|(&p, &eps)| {
                let eps = Scalar::from_int(eps.into());
                ExactMatrix::from_fn(p, p, |r, c| if r + c == p - 1 { eps.clone() } else { Scalar::zero() })
            })
            .collect();
        ExactMatrix::block_diag(&blocks)
    }
}

/// The sip matrix with the given block sizes and signs.
pub fn build_sip(sizes: &[usize], signs: &[i8]) -> Result<ExactMatrix> {
    Ok(SipMatrix::new(sizes.to_vec(), signs.to_vec())?.to_matrix())
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SignEntry {
    pub lambda: Rational,
    pub size: usize,
    pub eps: i8,
}

/// One sign per Jordan block at a real eigenvalue, ordered by eigenvalue,
/// then size (descending), then sign (`+1` first).
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct SignCharacteristic {
    entries: Vec<SignEntry>,
}

impl SignCharacteristic {
    pub fn new(mut entries: Vec<SignEntry>) -> Result<Self> {
        if let Some(e) = entries.iter().find(|e| e.eps != 1 && e.eps != -1) {
            return Err(Error::BadSignature(format!("sign {} is not ±1", e.eps)));
        }
        entries.sort_by(|x, y| {
            x.lambda.cmp(&y.lambda).then(y.size.cmp(&x.size)).then(y.eps.cmp(&x.eps))
        });
        Ok(SignCharacteristic { entries })
    }

    pub fn entries(&self) -> &[SignEntry] {
        &self.entries
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// The signs in entry order, which is also the order of the real blocks
    /// of a layout built from a matching spec.
    pub fn signs(&self) -> Vec<i8> {
        self.entries.iter().map(|e| e.eps).collect()
    }

    /// Whether there is exactly one entry per real block of `spec`.
    pub fn matches(&self, spec: &JordanSpec) -> bool {
        let blocks: Vec<(&Rational, usize)> =
            spec.real.iter().flat_map(|g| g.sizes.iter().map(move |&s| (&g.lambda, s))).collect();
        blocks.len() == self.entries.len()
            && blocks.iter().zip(&self.entries).all(|(&(lambda, size), e)| *lambda == e.lambda && size == e.size)
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CanonicalPair {
    pub kind: PairKind,
    pub basis_kind: BasisKind,
    pub spec: JordanSpec,
    pub layout: BlockLayout,
    pub j: ExactMatrix,
    pub p: ExactMatrix,
    pub basis: ExactMatrix,
    pub signs: SignCharacteristic,
}

/// Chains at one real eigenvalue, scaled so that their Gram matrices are
/// `eps` times the flip matrix.
struct RealGroup {
    lambda: Rational,
    chains: Vec<(Vec<Vector>, i8)>,
}

/// Chains at `sigma + tau i`, scaled so that `g_a^T H g_b = 2i` on the
/// antidiagonal and zero elsewhere.
struct PairGroup {
    sigma: Rational,
    tau: Rational,
    chains: Vec<Vec<Vector>>,
}

struct Normalized {
    spec: JordanSpec,
    layout: BlockLayout,
    real: Vec<RealGroup>,
    pairs: Vec<PairGroup>,
}

impl Normalized {
    fn signs(&self) -> SignCharacteristic {
        let entries = self
            .real
            .iter()
            .flat_map(|g| {
                g.chains.iter().map(|(c, eps)| SignEntry { lambda: g.lambda.clone(), size: c.len(), eps: *eps })
            })
            .collect();
        SignCharacteristic { entries }
    }

    /// Signs of all sip blocks: the sign characteristic, then `+1` per pair.
    fn sip(&self) -> SipMatrix {
        let mut signs = self.signs().signs();
        signs.resize(self.layout.blocks().len(), 1);
        SipMatrix { sizes: self.layout.widths(), signs }
    }

    fn real_columns(&self) -> impl Iterator<Item = &Vector> {
        self.real.iter().flat_map(|g| g.chains.iter().flat_map(|(c, _)| c.iter()))
    }
}

fn scaled(v: &[Scalar], a: &Scalar) -> Vector {
    v.iter().map(|x| x * a).collect()
}

fn conjugated(v: &[Scalar]) -> Vector {
    v.iter().map(Scalar::conj).collect()
}

/// Rejects inputs outside the scope of the construction.
fn validate(a: &ExactMatrix, h: &ExactMatrix) -> Result<()> {
    if !a.is_square() || !h.is_square() || a.rows() != h.rows() {
        return Err(Error::DimensionMismatch(format!(
            "A is {}x{} and H is {}x{}; both must be square of the same size",
            a.rows(),
            a.cols(),
            h.rows(),
            h.cols()
        )));
    }
    if !h.is_real() {
        return Err(Error::NonRealMatrix);
    }
    if !a.is_real() {
        return Err(Error::NonRealMatrix);
    }
    if !a.is_rational() {
        return Err(Error::NonRationalMatrix);
    }
    let verdict = verify::is_h_selfadjoint(a, h)?;
    match verdict.witness {
        Some(w) => Err(Error::NotSelfadjoint(Box::new(w))),
        None => Ok(()),
    }
}

fn normalized(a: &ExactMatrix, h: &ExactMatrix) -> Result<Normalized> {
    validate(a, h)?;
    let spec = spectral::jordan_structure(a)?;
    let mut real = Vec::new();
    for group in &spec.real {
        let lambda = Scalar::from_rational(group.lambda.clone());
        let raw = spectral::chains_at(a, &lambda, &group.sizes)?;
        let mut chains = Vec::new();
        for chain in normalize(h, raw, Target::Signed)? {
            let eps = match chain.lead.real_sign() {
                Some(Ordering::Greater) => 1,
                Some(Ordering::Less) => -1,
                _ => return Err(Error::InternalStructureMismatch(format!("leading value {} at {lambda}", chain.lead))),
            };
            let factor = scale_factor(&chain.lead, Target::Signed)
                .ok_or_else(|| Error::NonconstructibleScaling { value: Box::new(chain.lead.clone()) })?;
            chains.push((chain.vectors.iter().map(|v| scaled(v, &factor)).collect::<Vec<_>>(), eps));
        }
        // equal blocks are interchangeable; list positive ones first
        chains.sort_by(|x, y| y.0.len().cmp(&x.0.len()).then(y.1.cmp(&x.1)));
        real.push(RealGroup { lambda: group.lambda.clone(), chains });
    }
    let mut pairs = Vec::new();
    for group in &spec.nonreal {
        let raw = spectral::chains_at(a, &group.lambda(), &group.sizes)?;
        let chains = normalize(h, raw, Target::Paired)?
            .into_iter()
            .map(|chain| {
                let factor = scale_factor(&chain.lead, Target::Paired)
                    .ok_or_else(|| Error::NonconstructibleScaling { value: Box::new(chain.lead.clone()) })?;
                Ok(chain.vectors.iter().map(|v| scaled(v, &factor)).collect())
            })
            .collect::<Result<Vec<Vec<Vector>>>>()?;
        pairs.push(PairGroup { sigma: group.sigma.clone(), tau: group.tau.clone(), chains });
    }
    let mut blocks = Vec::new();
    for g in &real {
        blocks.extend(g.chains.iter().map(|(c, _)| Block::Real { lambda: g.lambda.clone(), size: c.len() }));
    }
    for g in &pairs {
        blocks.extend(
            g.chains.iter().map(|c| Block::Pair { sigma: g.sigma.clone(), tau: g.tau.clone(), size: c.len() }),
        );
    }
    let layout = BlockLayout::new(blocks);
    if layout != BlockLayout::from_spec(&spec) {
        return Err(Error::InternalStructureMismatch("normalized chains do not match the Jordan structure".into()));
    }
    Ok(Normalized { spec, layout, real, pairs })
}

fn ensure(verdict: verify::Verdict) -> Result<()> {
    match verdict.witness {
        None => Ok(()),
        Some(w) => Err(Error::InternalStructureMismatch(format!("constructed basis fails its own check: {w}"))),
    }
}

/// Flipped orthogonal canonical pair `(J, P)` with basis `T`.
///
/// For a pair block the chain `g` at `sigma + tau i` is scaled so that
/// `g_a^T H g_b` is one on the antidiagonal, and the block's columns are
/// `[g | conj(g)]`.
pub fn fo_canonical(a: &ExactMatrix, h: &ExactMatrix) -> Result<CanonicalPair> {
    let data = normalized(a, h)?;
    let mut columns: Vec<Vector> = data.real_columns().cloned().collect();
    // 2i * ((1 - i)/2)^2 = 1
    let to_unit = Scalar::gaussian(ratio(1, 2), ratio(-1, 2));
    for g in &data.pairs {
        for chain in &g.chains {
            let left: Vec<Vector> = chain.iter().map(|v| scaled(v, &to_unit)).collect();
            columns.extend(left.iter().cloned());
            columns.extend(left.iter().map(|v| conjugated(v)));
        }
    }
    let basis = ExactMatrix::from_columns(&columns)?;
    let sip = data.sip();
    let j = data.layout.complex_jordan();
    ensure(verify::is_jordan_basis(a, &basis, &j, Check::Fo)?)?;
    ensure(verify::is_flipped_orthogonal(&basis, h, &data.layout, &data.signs().signs())?)?;
    ensure(verify::is_gamma_cs(&basis, &data.layout, &Scalar::one())?)?;
    Ok(CanonicalPair {
        kind: PairKind::Complex,
        basis_kind: BasisKind::FlippedOrthogonal,
        signs: data.signs(),
        p: sip.to_matrix(),
        spec: data.spec,
        layout: data.layout,
        j,
        basis,
    })
}

/// The sign characteristic: one sign per Jordan block at a real eigenvalue.
/// It does not depend on the choice of basis.
pub fn sign_characteristic(a: &ExactMatrix, h: &ExactMatrix) -> Result<SignCharacteristic> {
    Ok(normalized(a, h)?.signs())
}

/// Real canonical pair `(J_R, P)` with real basis `R`.
///
/// A pair chain `g` with `g_a^T H g_b = 2i` on the antidiagonal contributes
/// the columns `Re g_0, Im g_0, Re g_1, Im g_1, ...`.
pub fn real_canonical(a: &ExactMatrix, h: &ExactMatrix) -> Result<CanonicalPair> {
    let data = normalized(a, h)?;
    let mut columns: Vec<Vector> = data.real_columns().cloned().collect();
    for g in &data.pairs {
        for chain in &g.chains {
            for v in chain {
                columns.push(v.iter().map(Scalar::re).collect());
                columns.push(v.iter().map(Scalar::im).collect());
            }
        }
    }
    let basis = ExactMatrix::from_columns(&columns)?;
    let sip = data.sip();
    let j = data.layout.real_jordan();
    if !basis.is_real() {
        return Err(Error::InternalStructureMismatch("real canonical basis is not real".into()));
    }
    ensure(verify::is_jordan_basis(a, &basis, &j, Check::Fo)?)?;
    ensure(verify::is_sip_shaped(&basis, h, &data.layout)?)?;
    let p = sip.to_matrix();
    if basis.transpose().matmul(h)?.matmul(&basis)? != p {
        return Err(Error::InternalStructureMismatch("real canonical Gram matrix differs from P".into()));
    }
    Ok(CanonicalPair {
        kind: PairKind::Real,
        basis_kind: BasisKind::RealCanonical,
        signs: data.signs(),
        p,
        spec: data.spec,
        layout: data.layout,
        j,
        basis,
    })
}

/// Block diagonal `S` turning the real Jordan form into the complex one:
/// identity on real blocks, and on a pair block of size `p`
///
/// ```text
/// S_j = 1/sqrt2 * rows (e_k + i e_{p+k}) at row 2k, (i e_k + e_{p+k}) at row 2k+1
/// ```
///
/// so that `S^-1 J_R S = J` and `S* P S = P`.
pub fn build_s(layout: &BlockLayout) -> ExactMatrix {
    let blocks: Vec<ExactMatrix> = layout
        .blocks()
        .iter()
        .map(|b| match b {
            Block::Real { size, .. } => ExactMatrix::identity(*size),
            Block::Pair { size, .. } => pair_s(*size),
        })
        .collect();
    ExactMatrix::block_diag(&blocks)
}

/// The inverse of [`build_s`]: on a pair block, row `k` is
/// `(e_{2k} - i e_{2k+1}) / sqrt2` and row `p + k` is `(-i e_{2k} + e_{2k+1}) / sqrt2`.
pub fn build_s_inv(layout: &BlockLayout) -> ExactMatrix {
    let blocks: Vec<ExactMatrix> = layout
        .blocks()
        .iter()
        .map(|b| match b {
            Block::Real { size, .. } => ExactMatrix::identity(*size),
            Block::Pair { size, .. } => pair_s_inv(*size),
        })
        .collect();
    ExactMatrix::block_diag(&blocks)
}

fn pair_s(p: usize) -> ExactMatrix {
    let unit = Scalar::inv_sqrt2();
    let imag = &unit * &Scalar::i();
    ExactMatrix::from_fn(2 * p, 2 * p, |r, c| {
        let (k, odd) = (r / 2, r % 2 == 1);
        if c == k {
            if odd { imag.clone() } else { unit.clone() }
        } else if c == p + k {
            if odd { unit.clone() } else { imag.clone() }
        } else {
            Scalar::zero()
        }
    })
}

fn pair_s_inv(p: usize) -> ExactMatrix {
    let unit = Scalar::inv_sqrt2();
    let imag = -(&unit * &Scalar::i());
    ExactMatrix::from_fn(2 * p, 2 * p, |r, c| {
        let (k, second) = if r < p { (r, false) } else { (r - p, true) };
        if c == 2 * k {
            if second { imag.clone() } else { unit.clone() }
        } else if c == 2 * k + 1 {
            if second { unit.clone() } else { imag.clone() }
        } else {
            Scalar::zero()
        }
    })
}

/// The `i`-FOCS basis `N = R S`: `N^-1 A N = J`, `N* H N = P`, and on every
/// pair block `N_k = [Q_k | i conj(Q_k)]`.
pub fn focs_basis(a: &ExactMatrix, h: &ExactMatrix) -> Result<CanonicalPair> {
    let real = real_canonical(a, h)?;
    let basis = real.basis.matmul(&build_s(&real.layout))?;
    let j = real.layout.complex_jordan();
    let signs = real.signs.signs();
    ensure(verify::is_jordan_basis(a, &basis, &j, Check::Focs)?)?;
    ensure(verify::is_flipped_orthogonal(&basis, h, &real.layout, &signs)?)?;
    ensure(verify::is_gamma_cs(&basis, &real.layout, &Scalar::i())?)?;
    Ok(CanonicalPair { kind: PairKind::Complex, basis_kind: BasisKind::IFocs, j, basis, ..real })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::scalar::rat;
    use crate::spectral::{ComplexBlocks, RealBlocks};

    fn sip(n: usize) -> ExactMatrix {
        build_sip(&[n], &[1]).unwrap()
    }

    fn pair_layout(sizes: &[usize]) -> BlockLayout {
        BlockLayout::new(sizes.iter().map(|&size| Block::Pair { sigma: rat(1), tau: rat(2), size }).collect())
    }

    #[test]
    fn sip_matrices() {
        assert_eq!(build_sip(&[1], &[1]).unwrap(), ExactMatrix::from_ints(&[[1]]));
        assert_eq!(build_sip(&[4], &[1]).unwrap(), corpus::worked_example().p);
        assert_eq!(build_sip(&[2], &[-1]).unwrap(), ExactMatrix::from_ints(&[[0, -1], [-1, 0]]));
        assert_eq!(
            build_sip(&[1, 2], &[-1, 1]).unwrap(),
            ExactMatrix::from_ints(&[[-1, 0, 0], [0, 0, 1], [0, 1, 0]])
        );
        assert!(matches!(build_sip(&[2], &[1, 1]), Err(Error::BadSignature(_))));
        assert!(matches!(build_sip(&[2], &[2]), Err(Error::BadSignature(_))));
    }

    #[test]
    fn sip_is_an_involution() {
        let p = build_sip(&[3, 1, 2], &[1, -1, -1]).unwrap();
        assert!(p.is_hermitian());
        assert_eq!(p.matmul(&p).unwrap(), ExactMatrix::identity(6));
    }

    #[test]
    fn fo_of_a_jordan_block() {
        let a = ExactMatrix::from_ints(&[[1, 1], [0, 1]]);
        let pair = fo_canonical(&a, &sip(2)).unwrap();
        assert_eq!(pair.j, a);
        assert_eq!(pair.p, sip(2));
        assert_eq!(pair.basis, ExactMatrix::identity(2));
        assert_eq!(pair.signs.entries(), &[SignEntry { lambda: rat(1), size: 2, eps: 1 }]);

        let negative = sip(2).scale(&-Scalar::one());
        let pair = fo_canonical(&a, &negative).unwrap();
        assert_eq!(pair.p, negative);
        assert_eq!(pair.signs.signs(), alloc::vec![-1]);
    }

    #[test]
    fn fo_of_the_worked_example() {
        let ex = corpus::worked_example();
        let pair = fo_canonical(&ex.a, &ex.h).unwrap();
        assert_eq!(pair.j, ex.j);
        assert_eq!(pair.p, ex.p);
        assert!(pair.signs.is_empty());
        let t = &pair.basis;
        assert_eq!(t.inverse().unwrap().matmul(&ex.a).unwrap().matmul(t).unwrap(), ex.j);
        assert_eq!(t.conj_transpose().matmul(&ex.h).unwrap().matmul(t).unwrap(), ex.p);
    }

    #[test]
    fn sign_characteristics() {
        let a = ExactMatrix::from_ints(&[[2, 0], [0, 3]]);
        let h = ExactMatrix::from_ints(&[[1, 0], [0, -1]]);
        assert_eq!(
            sign_characteristic(&a, &h).unwrap().entries(),
            &[SignEntry { lambda: rat(2), size: 1, eps: 1 }, SignEntry { lambda: rat(3), size: 1, eps: -1 }]
        );
        let ex = corpus::worked_example();
        assert!(sign_characteristic(&ex.a, &ex.h).unwrap().is_empty());
        let block = ExactMatrix::from_ints(&[[1, 1], [0, 1]]);
        assert_eq!(sign_characteristic(&block, &sip(2)).unwrap().signs(), alloc::vec![1]);
    }

    #[test]
    fn scaling_by_sqrt2_stays_in_the_field() {
        // H = diag(2, -1/2): chains scale by 1/sqrt2 and sqrt2
        let a = ExactMatrix::from_ints(&[[0, 0], [0, 1]]);
        let h = ExactMatrix::from_rows(alloc::vec![
            alloc::vec![Scalar::from_int(2), Scalar::zero()],
            alloc::vec![Scalar::zero(), Scalar::from_ratio(-1, 2)],
        ])
        .unwrap();
        let pair = real_canonical(&a, &h).unwrap();
        assert_eq!(pair.basis[(0, 0)], Scalar::inv_sqrt2());
        assert_eq!(pair.basis[(1, 1)], Scalar::sqrt2());
        assert_eq!(pair.signs.signs(), alloc::vec![1, -1]);
    }

    #[test]
    fn nonconstructible_scaling_is_reported() {
        let a = ExactMatrix::from_ints(&[[0]]);
        let h = ExactMatrix::from_ints(&[[3]]);
        assert_eq!(
            fo_canonical(&a, &h).unwrap_err(),
            Error::NonconstructibleScaling { value: Box::new(Scalar::from_int(3)) }
        );
    }

    #[test]
    fn input_validation() {
        let a = ExactMatrix::from_ints(&[[0, 1], [0, 0]]);
        assert!(matches!(fo_canonical(&a, &ExactMatrix::identity(2)), Err(Error::NotSelfadjoint(_))));
        let h = ExactMatrix::from_ints(&[[0, 1], [2, 0]]);
        assert!(matches!(fo_canonical(&a, &h), Err(Error::NotHermitian(_))));
        let irrational = ExactMatrix::from_ints(&[[0, 2], [1, 0]]);
        let h = ExactMatrix::from_ints(&[[1, 0], [0, 2]]);
        assert!(matches!(fo_canonical(&irrational, &h), Err(Error::IrrationalSpectrum { .. })));
        assert!(matches!(fo_canonical(&a, &ExactMatrix::identity(3)), Err(Error::DimensionMismatch(_))));
    }

    #[test]
    fn s_for_small_pairs() {
        let r = Scalar::inv_sqrt2();
        let ri = &r * &Scalar::i();
        let z = Scalar::zero();
        let s1 = build_s(&pair_layout(&[1]));
        assert_eq!(
            s1,
            ExactMatrix::from_rows(alloc::vec![alloc::vec![r.clone(), ri.clone()], alloc::vec![ri.clone(), r.clone()]])
                .unwrap()
        );
        let s2 = build_s(&pair_layout(&[2]));
        let expected = ExactMatrix::from_rows(alloc::vec![
            alloc::vec![r.clone(), z.clone(), ri.clone(), z.clone()],
            alloc::vec![ri.clone(), z.clone(), r.clone(), z.clone()],
            alloc::vec![z.clone(), r.clone(), z.clone(), ri.clone()],
            alloc::vec![z.clone(), ri.clone(), z.clone(), r.clone()],
        ])
        .unwrap();
        assert_eq!(s2, expected);
        let inv1 = build_s_inv(&pair_layout(&[1]));
        let nri = -&ri;
        assert_eq!(
            inv1,
            ExactMatrix::from_rows(alloc::vec![alloc::vec![r.clone(), nri.clone()], alloc::vec![nri, r]]).unwrap()
        );
        let all_real = BlockLayout::new(alloc::vec![Block::Real { lambda: rat(0), size: 3 }]);
        assert_eq!(build_s(&all_real), ExactMatrix::identity(3));
        assert_eq!(build_s_inv(&all_real), ExactMatrix::identity(3));
    }

    #[test]
    fn s_intertwines_and_preserves_sip() {
        for sizes in [&[1][..], &[2], &[3], &[3, 1], &[2, 2]] {
            let mut blocks = alloc::vec![Block::Real { lambda: rat(-1), size: 2 }];
            blocks.extend(pair_layout(sizes).blocks().iter().cloned());
            let layout = BlockLayout::new(blocks);
            let s = build_s(&layout);
            let n = layout.dimension();
            assert_eq!(s.matmul(&build_s_inv(&layout)).unwrap(), ExactMatrix::identity(n));
            // S^-1 J_R S = J
            assert_eq!(
                layout.real_jordan().matmul(&s).unwrap(),
                s.matmul(&layout.complex_jordan()).unwrap()
            );
            let mut signs = alloc::vec![-1];
            signs.resize(layout.blocks().len(), 1);
            let p = build_sip(&layout.widths(), &signs).unwrap();
            assert_eq!(s.conj_transpose().matmul(&p).unwrap().matmul(&s).unwrap(), p);
        }
    }

    #[test]
    fn real_canonical_examples() {
        let rotation = ExactMatrix::from_ints(&[[0, 1], [-1, 0]]);
        let pair = real_canonical(&rotation, &sip(2)).unwrap();
        assert_eq!(pair.basis, ExactMatrix::identity(2));
        assert_eq!(pair.j, rotation);
        assert_eq!(pair.p, sip(2));

        let pair = real_canonical(&ExactMatrix::from_ints(&[[2]]), &ExactMatrix::from_ints(&[[-1]])).unwrap();
        assert_eq!(pair.basis, ExactMatrix::identity(1));
        assert_eq!(pair.j, ExactMatrix::from_ints(&[[2]]));
        assert_eq!(pair.p, ExactMatrix::from_ints(&[[-1]]));
        assert_eq!(pair.signs.signs(), alloc::vec![-1]);

        let ex = corpus::worked_example();
        let pair = real_canonical(&ex.a, &ex.h).unwrap();
        assert_eq!(pair.j, ExactMatrix::from_ints(&[[0, 1, 1, 0], [-1, 0, 0, 1], [0, 0, 0, 1], [0, 0, -1, 0]]));
        assert_eq!(pair.p, ex.p);
        assert!(pair.basis.is_real());
        let r = &pair.basis;
        assert_eq!(ex.a.matmul(r).unwrap(), r.matmul(&pair.j).unwrap());
        assert_eq!(r.transpose().matmul(&ex.h).unwrap().matmul(r).unwrap(), ex.p);
    }

    #[test]
    fn focs_examples() {
        let rotation = ExactMatrix::from_ints(&[[0, 1], [-1, 0]]);
        let pair = focs_basis(&rotation, &sip(2)).unwrap();
        assert_eq!(pair.basis, build_s(&pair_layout(&[1])));
        assert_eq!(pair.j, ExactMatrix::from_rows(alloc::vec![
            alloc::vec![Scalar::i(), Scalar::zero()],
            alloc::vec![Scalar::zero(), -Scalar::i()],
        ])
        .unwrap());
        assert_eq!(pair.basis_kind, BasisKind::IFocs);

        let diagonal = ExactMatrix::from_ints(&[[2, 0], [0, 3]]);
        let h = ExactMatrix::from_ints(&[[1, 0], [0, -1]]);
        assert_eq!(focs_basis(&diagonal, &h).unwrap().basis, real_canonical(&diagonal, &h).unwrap().basis);

        let ex = corpus::worked_example();
        let pair = focs_basis(&ex.a, &ex.h).unwrap();
        assert_eq!(pair.j, ex.j);
        assert_eq!(pair.p, ex.p);
        let n = &pair.basis;
        assert_eq!(n.inverse().unwrap().matmul(&ex.a).unwrap().matmul(n).unwrap(), ex.j);
        assert_eq!(n.conj_transpose().matmul(&ex.h).unwrap().matmul(n).unwrap(), ex.p);
        for row in 0..4 {
            for k in 0..2 {
                assert_eq!(n[(row, 2 + k)], &Scalar::i() * &n[(row, k)].conj());
            }
        }
    }

    #[test]
    fn repeated_blocks_at_one_eigenvalue() {
        // two 1-blocks at 0 with an isotropic plane, and two 2-blocks at 1
        let h = ExactMatrix::from_ints(&[[0, 1], [1, 0]]);
        let pair = fo_canonical(&ExactMatrix::zeros(2, 2), &h).unwrap();
        assert_eq!(pair.signs.signs(), alloc::vec![1, -1]);

        let a = ExactMatrix::block_diag(&vec![ExactMatrix::from_ints(&[[1, 1], [0, 1]]); 2]);
        let h = build_sip(&[2, 2], &[1, 1]).unwrap();
        let pair = fo_canonical(&a, &h).unwrap();
        assert_eq!(pair.signs.signs(), alloc::vec![1, 1]);
        let spec = JordanSpec::new(alloc::vec![RealBlocks { lambda: rat(1), sizes: alloc::vec![2, 2] }], Vec::new())
            .unwrap();
        assert_eq!(pair.spec, spec);
    }

    #[test]
    fn sign_characteristic_matching() {
        let spec = JordanSpec::new(
            alloc::vec![RealBlocks { lambda: rat(1), sizes: alloc::vec![1, 2] }],
            alloc::vec![ComplexBlocks { sigma: rat(0), tau: rat(1), sizes: alloc::vec![1] }],
        )
        .unwrap();
        let signs = SignCharacteristic::new(alloc::vec![
            SignEntry { lambda: rat(1), size: 1, eps: -1 },
            SignEntry { lambda: rat(1), size: 2, eps: 1 },
        ])
        .unwrap();
        assert!(signs.matches(&spec));
        assert_eq!(signs.entries()[0].size, 2);
        assert!(!SignCharacteristic::default().matches(&spec));
    }
}
