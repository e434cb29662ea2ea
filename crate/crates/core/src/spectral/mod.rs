//! Exact spectral analysis of a real rational matrix: characteristic
//! polynomial, eigenvalues in `Q(i)`, Jordan block sizes and Jordan chains.
//!
//! Eigenvalues are ordered canonically: real ones ascending, then conjugate
//! pairs by `(sigma, tau)` with the representative `sigma + tau*i`, `tau > 0`.
//! Blocks at one eigenvalue are listed longest first.

mod poly;
mod roots;

use alloc::format;
use alloc::string::ToString;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::linalg::{rank_of, ExactMatrix, Vector};
use crate::scalar::{sqrt_rational, Rational, Scalar};

pub(crate) use poly::Poly;

/// Monic characteristic polynomial `det(xI - A)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CharPoly(Poly);

impl CharPoly {
    /// Builds a polynomial from ascending coefficients, which must be monic.
    pub fn from_coefficients(coeffs: Vec<Rational>) -> Result<Self> {
        let p = Poly::new(coeffs);
        if p.is_zero() || p.leading() != Rational::from_integer(1.into()) {
            return Err(Error::InvalidSpec("characteristic polynomial must be monic".to_string()));
        }
        Ok(CharPoly(p))
    }

    /// Coefficients in ascending order; the last one is 1.
    pub fn coefficients(&self) -> &[Rational] {
        self.0.coeffs()
    }

    pub fn degree(&self) -> usize {
        self.0.degree()
    }

    pub fn eval(&self, x: &Scalar) -> Scalar {
        self.0.eval(x)
    }
}

impl fmt::Display for CharPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Eigenvalue {
    pub value: Scalar,
    pub multiplicity: usize,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RealBlocks {
    pub lambda: Rational,
    pub sizes: Vec<usize>,
}

/// Blocks at `sigma + tau*i` (with `tau > 0`); the blocks at the conjugate
/// eigenvalue have the same sizes and are not stored separately.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ComplexBlocks {
    pub sigma: Rational,
    pub tau: Rational,
    pub sizes: Vec<usize>,
}

impl ComplexBlocks {
    pub fn lambda(&self) -> Scalar {
        Scalar::gaussian(self.sigma.clone(), self.tau.clone())
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct JordanSpec {
    pub real: Vec<RealBlocks>,
    pub nonreal: Vec<ComplexBlocks>,
}

impl JordanSpec {
    /// Validates and puts the data in canonical order.
    pub fn new(mut real: Vec<RealBlocks>, mut nonreal: Vec<ComplexBlocks>) -> Result<Self> {
        for group in &mut real {
            group.sizes.sort_unstable_by(|a, b| b.cmp(a));
        }
        for group in &mut nonreal {
            group.sizes.sort_unstable_by(|a, b| b.cmp(a));
            if !group.tau.is_positive() {
                return Err(Error::InvalidSpec(format!("tau must be positive, got {}", group.tau)));
            }
        }
        let empty = real.iter().map(|g| &g.sizes).chain(nonreal.iter().map(|g| &g.sizes));
        for sizes in empty {
            if sizes.is_empty() || sizes.contains(&0) {
                return Err(Error::InvalidSpec("every eigenvalue needs blocks of positive size".to_string()));
            }
        }
        real.sort_by(|a, b| a.lambda.cmp(&b.lambda));
        nonreal.sort_by(|a, b| (&a.sigma, &a.tau).cmp(&(&b.sigma, &b.tau)));
        if real.windows(2).any(|w| w[0].lambda == w[1].lambda)
            || nonreal.windows(2).any(|w| w[0].sigma == w[1].sigma && w[0].tau == w[1].tau)
        {
            return Err(Error::InvalidSpec("eigenvalue listed twice".to_string()));
        }
        Ok(JordanSpec { real, nonreal })
    }

    pub fn dimension(&self) -> usize {
        self.real.iter().map(|g| g.sizes.iter().sum::<usize>()).sum::<usize>()
            + 2 * self.nonreal.iter().map(|g| g.sizes.iter().sum::<usize>()).sum::<usize>()
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct JordanChain {
    pub eigenvalue: Scalar,
    /// `g_0, ..., g_{p-1}` with `(A - lambda I) g_0 = 0` and
    /// `(A - lambda I) g_k = g_{k-1}`.
    pub vectors: Vec<Vector>,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct JordanChainSet {
    /// Real blocks first; each nonreal block is followed by its conjugate chain.
    pub chains: Vec<JordanChain>,
}

impl JordanChainSet {
    /// All chain vectors as columns, in chain order.
    pub fn basis(&self) -> Result<ExactMatrix> {
        let columns: Vec<Vector> = self.chains.iter().flat_map(|c| c.vectors.iter().cloned()).collect();
        ExactMatrix::from_columns(&columns)
    }
}

fn require_rational_square(a: &ExactMatrix) -> Result<()> {
    if !a.is_square() {
        return Err(Error::DimensionMismatch(format!("expected a square matrix, got {}x{}", a.rows(), a.cols())));
    }
    if !a.is_rational() {
        return Err(Error::NonRationalMatrix);
    }
    Ok(())
}

/// Faddeev–LeVerrier expansion of `det(xI - A)`.
pub fn char_poly(a: &ExactMatrix) -> Result<CharPoly> {
    require_rational_square(a)?;
    let n = a.rows();
    let mut coeffs = vec![Rational::zero(); n + 1];
    coeffs[n] = Rational::from_integer(1.into());
    let mut m = ExactMatrix::zeros(n, n);
    for k in 1..=n {
        let am = a.matmul(&m)?;
        m = am.try_add(&ExactMatrix::identity(n).scale(&Scalar::from_rational(coeffs[n - k + 1].clone())))?;
        let am = a.matmul(&m)?;
        let trace: Scalar = (0..n).map(|i| am[(i, i)].clone()).sum();
        let trace = trace.as_rational().cloned().ok_or(Error::NonRationalMatrix)?;
        coeffs[n - k] = -trace / Rational::from_integer(BigInt::from(k));
    }
    Ok(CharPoly(Poly::new(coeffs)))
}

/// Rational roots and pair representatives `(sigma, tau)`.
type GaussianRoots = (Vec<Rational>, Vec<(Rational, Rational)>);

/// Roots in `Q(i)` of a squarefree monic polynomial, split into rational roots
/// and pair representatives `(sigma, tau)` with `tau > 0`.
fn gaussian_roots(s: &Poly) -> Result<GaussianRoots> {
    let mut real: Vec<Rational> = Vec::new();
    let mut pairs: Vec<(Rational, Rational)> = Vec::new();

    // Scaling x by the denominator lcm makes the polynomial monic over Z, so
    // its roots in Q(i) become Gaussian integers after scaling.
    let scale = s.denominator_lcm();
    let scale_f = scale.to_f64().unwrap_or(1.0);
    let floats: Vec<f64> = s.coeffs().iter().map(|c| c.to_f64().unwrap_or(0.0)).collect();
    for z in roots::approximate_roots(&floats) {
        let round = |v: f64| Rational::new(BigInt::from(libm::round(v * scale_f) as i64), scale.clone());
        let (re, im) = (round(z.re), round(z.im.abs()));
        let candidate = Scalar::gaussian(re.clone(), im.clone());
        if !s.eval(&candidate).is_zero() {
            continue;
        }
        if im.is_zero() {
            if !real.contains(&re) {
                real.push(re);
            }
        } else if !pairs.contains(&(re.clone(), im.clone())) {
            pairs.push((re, im));
        }
    }

    let mut found = Poly::one();
    for r in &real {
        found = found.mul(&Poly::linear(r));
    }
    for (sigma, tau) in &pairs {
        found = found.mul(&Poly::conjugate_pair(sigma, tau));
    }
    let (leftover, rem) = s.divrem(&found);
    if !rem.is_zero() {
        return Err(Error::InternalStructureMismatch("verified roots do not divide the polynomial".to_string()));
    }
    match leftover.degree() {
        0 => {}
        1 => real.push(-&leftover.coeffs()[0] / &leftover.coeffs()[1]),
        2 => {
            let c = leftover.monic();
            let (c0, c1) = (&c.coeffs()[0], &c.coeffs()[1]);
            let half = Rational::new(1.into(), 2.into());
            let disc = c1 * c1 - c0 * Rational::from_integer(4.into());
            if let Some(root) = sqrt_rational(&disc) {
                real.push((-c1 + &root) * &half);
                real.push((-c1 - &root) * &half);
            } else if let Some(root) = sqrt_rational(&-&disc) {
                pairs.push((-c1 * &half, root * &half));
            } else {
                return Err(Error::IrrationalSpectrum { factor: leftover.to_string() });
            }
        }
        _ => return Err(Error::IrrationalSpectrum { factor: leftover.to_string() }),
    }
    real.sort();
    pairs.sort();
    Ok((real, pairs))
}

/// Full factorization over `Q(i)`. Real eigenvalues come first (ascending),
/// then each pair as `sigma + tau*i` followed by `sigma - tau*i`.
pub fn eigenvalues(p: &CharPoly) -> Result<Vec<Eigenvalue>> {
    let poly = &p.0;
    let (real, pairs) = gaussian_roots(&poly.squarefree_part())?;
    let mut out = Vec::new();
    for r in real {
        let multiplicity = poly.multiplicity(&Poly::linear(&r));
        out.push(Eigenvalue { value: Scalar::from_rational(r), multiplicity });
    }
    for (sigma, tau) in pairs {
        let multiplicity = poly.multiplicity(&Poly::conjugate_pair(&sigma, &tau));
        let value = Scalar::gaussian(sigma, tau);
        out.push(Eigenvalue { value: value.clone(), multiplicity });
        out.push(Eigenvalue { value: value.conj(), multiplicity });
    }
    Ok(out)
}

/// Segre characteristic (block sizes, descending) from the rank sequence
/// `rank((A - lambda I)^k)`, `k = 0, 1, ...`, which must have stabilized.
pub(crate) fn sizes_from_ranks(ranks: &[usize]) -> Vec<usize> {
    // at_least[k] = number of blocks of size > k
    let at_least: Vec<usize> = ranks.windows(2).map(|w| w[0] - w[1]).collect();
    let mut sizes = Vec::new();
    for (k, &count) in at_least.iter().enumerate() {
        let longer = at_least.get(k + 1).copied().unwrap_or(0);
        sizes.extend(core::iter::repeat_n(k + 1, count - longer));
    }
    sizes.sort_unstable_by(|a, b| b.cmp(a));
    sizes
}

fn block_sizes(a: &ExactMatrix, lambda: &Scalar, multiplicity: usize) -> Result<Vec<usize>> {
    let n = a.rows();
    let shifted = a.shift(lambda);
    let mut ranks = vec![n];
    let mut power = ExactMatrix::identity(n);
    while *ranks.last().expect("nonempty") > n - multiplicity {
        if ranks.len() > multiplicity {
            return Err(Error::InternalStructureMismatch(format!(
                "rank sequence at {lambda} did not reach {}",
                n - multiplicity
            )));
        }
        power = power.matmul(&shifted)?;
        ranks.push(power.rank());
    }
    Ok(sizes_from_ranks(&ranks))
}

/// Jordan structure from exact rank sequences.
pub fn jordan_structure(a: &ExactMatrix) -> Result<JordanSpec> {
    let eig = eigenvalues(&char_poly(a)?)?;
    let mut real = Vec::new();
    let mut nonreal = Vec::new();
    for e in &eig {
        if let Some(lambda) = e.value.as_rational() {
            let sizes = block_sizes(a, &e.value, e.multiplicity)?;
            real.push(RealBlocks { lambda: lambda.clone(), sizes });
        } else if e.value.im().real_sign() == Some(core::cmp::Ordering::Greater) {
            let sizes = block_sizes(a, &e.value, e.multiplicity)?;
            let [sigma, _, tau, _] = e.value.components().map(Clone::clone);
            nonreal.push(ComplexBlocks { sigma, tau, sizes });
        }
    }
    JordanSpec::new(real, nonreal)
}

/// Jordan chains at one eigenvalue with the given block sizes (descending).
///
/// Tops of length-`s` chains are taken, in order, from the pivot-normalized
/// kernel basis of `(A - lambda I)^s`, skipping vectors that lie in
/// `ker (A - lambda I)^(s-1)` plus the level-`s` vectors of longer chains.
pub(crate) fn chains_at(a: &ExactMatrix, lambda: &Scalar, sizes: &[usize]) -> Result<Vec<Vec<Vector>>> {
    let n = a.rows();
    let shifted = a.shift(lambda);
    let mut chains: Vec<Vec<Vector>> = Vec::new();
    let mut distinct: Vec<usize> = sizes.to_vec();
    distinct.dedup();
    for &s in &distinct {
        let wanted = sizes.iter().filter(|&&x| x == s).count();
        let lower = shifted.pow((s - 1) as u32)?;
        let mut span: Vec<Vector> = if s > 1 { lower.kernel_basis() } else { Vec::new() };
        span.extend(chains.iter().map(|c| c[s - 1].clone()));
        let mut rank = rank_of(&span);
        let mut accepted = 0;
        for candidate in shifted.pow(s as u32)?.kernel_basis() {
            if accepted == wanted {
                break;
            }
            span.push(candidate.clone());
            let extended = rank_of(&span);
            if extended == rank {
                span.pop();
                continue;
            }
            rank = extended;
            accepted += 1;
            let mut chain = vec![candidate];
            for _ in 1..s {
                let next = shifted.mul_vec(chain.last().expect("nonempty"))?;
                chain.push(next);
            }
            chain.reverse();
            chains.push(chain);
        }
        if accepted != wanted {
            return Err(Error::InternalStructureMismatch(format!(
                "found {accepted} of {wanted} chains of length {s} at {lambda}"
            )));
        }
    }
    for chain in &chains {
        if chain[0].iter().all(Zero::is_zero) || !shifted.mul_vec(&chain[0])?.iter().all(Zero::is_zero) {
            return Err(Error::InternalStructureMismatch(format!("bad chain bottom at {lambda}")));
        }
    }
    if chains.iter().map(Vec::len).sum::<usize>() > n {
        return Err(Error::InternalStructureMismatch("too many chain vectors".to_string()));
    }
    Ok(chains)
}

/// Explicit Jordan chains for every block of `spec`. Chains at `sigma - tau*i`
/// are the entrywise conjugates of those at `sigma + tau*i`.
pub fn jordan_chains(a: &ExactMatrix, spec: &JordanSpec) -> Result<JordanChainSet> {
    require_rational_square(a)?;
    if spec.dimension() != a.rows() {
        return Err(Error::InternalStructureMismatch(format!(
            "structure of dimension {} for a {}x{} matrix",
            spec.dimension(),
            a.rows(),
            a.cols()
        )));
    }
    let mut chains = Vec::new();
    for group in &spec.real {
        let lambda = Scalar::from_rational(group.lambda.clone());
        for vectors in chains_at(a, &lambda, &group.sizes)? {
            chains.push(JordanChain { eigenvalue: lambda.clone(), vectors });
        }
    }
    for group in &spec.nonreal {
        let lambda = group.lambda();
        for vectors in chains_at(a, &lambda, &group.sizes)? {
            let conjugate = vectors.iter().map(|v| v.iter().map(Scalar::conj).collect()).collect();
            chains.push(JordanChain { eigenvalue: lambda.clone(), vectors });
            chains.push(JordanChain { eigenvalue: lambda.conj(), vectors: conjugate });
        }
    }
    let set = JordanChainSet { chains };
    if !set.basis()?.is_invertible() {
        return Err(Error::InternalStructureMismatch("chains do not form a basis".to_string()));
    }
    Ok(set)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::scalar::rat;

    fn poly(c: &[i64]) -> Vec<Rational> {
        c.iter().map(|&n| rat(n)).collect()
    }

    #[test]
    fn characteristic_polynomials() {
        assert_eq!(char_poly(&ExactMatrix::identity(2)).unwrap().coefficients(), poly(&[1, -2, 1]));
        let a = corpus::worked_example().a;
        assert_eq!(char_poly(&a).unwrap().coefficients(), poly(&[1, 0, 2, 0, 1]));
        let rot = ExactMatrix::from_ints(&[[0, 1], [-1, 0]]);
        assert_eq!(char_poly(&rot).unwrap().coefficients(), poly(&[1, 0, 1]));
    }

    #[test]
    fn eigenvalue_extraction() {
        let e = eigenvalues(&CharPoly::from_coefficients(poly(&[1, 0, 1])).unwrap()).unwrap();
        assert_eq!(e, vec![
            Eigenvalue { value: Scalar::i(), multiplicity: 1 },
            Eigenvalue { value: -Scalar::i(), multiplicity: 1 },
        ]);
        let e = eigenvalues(&CharPoly::from_coefficients(poly(&[1, 0, 2, 0, 1])).unwrap()).unwrap();
        assert_eq!(e.iter().map(|x| x.multiplicity).collect::<Vec<_>>(), vec![2, 2]);
        let err = eigenvalues(&CharPoly::from_coefficients(poly(&[-2, 0, 1])).unwrap()).unwrap_err();
        assert_eq!(err, Error::IrrationalSpectrum { factor: "x^2 - 2".into() });
    }

    #[test]
    fn eigenvalues_with_fractions() {
        // (x - 1/2)^2 (x^2 - x + 5/4): roots 1/2 (twice), 1/2 +- i
        let p = Poly::linear(&crate::scalar::ratio(1, 2))
            .mul(&Poly::linear(&crate::scalar::ratio(1, 2)))
            .mul(&Poly::conjugate_pair(&crate::scalar::ratio(1, 2), &rat(1)));
        let e = eigenvalues(&CharPoly(p)).unwrap();
        assert_eq!(e[0], Eigenvalue { value: Scalar::from_ratio(1, 2), multiplicity: 2 });
        assert_eq!(e[1].value, "1/2 + 1 i".parse().unwrap());
        assert_eq!(e.len(), 3);
    }

    #[test]
    fn structures() {
        let s = jordan_structure(&ExactMatrix::from_ints(&[[2, 0], [0, 2]])).unwrap();
        assert_eq!(s.real, vec![RealBlocks { lambda: rat(2), sizes: vec![1, 1] }]);
        let s = jordan_structure(&corpus::worked_example().a).unwrap();
        assert!(s.real.is_empty());
        assert_eq!(s.nonreal, vec![ComplexBlocks { sigma: rat(0), tau: rat(1), sizes: vec![2] }]);
        let s = jordan_structure(&ExactMatrix::from_ints(&[[1, 1], [0, 1]])).unwrap();
        assert_eq!(s.real, vec![RealBlocks { lambda: rat(1), sizes: vec![2] }]);
    }

    #[test]
    fn segre_from_weyr() {
        // blocks 3, 1 at one eigenvalue of a 4x4: ranks 4, 2, 1, 0
        assert_eq!(sizes_from_ranks(&[4, 2, 1, 0]), vec![3, 1]);
        assert_eq!(sizes_from_ranks(&[5, 3]), vec![1, 1]);
        assert_eq!(sizes_from_ranks(&[6, 4, 2]), vec![2, 2]);
    }

    #[test]
    fn chains() {
        let rot = ExactMatrix::from_ints(&[[0, 1], [-1, 0]]);
        let set = jordan_chains(&rot, &jordan_structure(&rot).unwrap()).unwrap();
        let one_i: Vector = vec![Scalar::one(), Scalar::i()];
        assert_eq!(set.chains[0].vectors, vec![one_i.clone()]);
        assert_eq!(set.chains[1].vectors, vec![vec![Scalar::one(), -Scalar::i()]]);

        let five = ExactMatrix::from_ints(&[[5]]);
        let set = jordan_chains(&five, &jordan_structure(&five).unwrap()).unwrap();
        assert_eq!(set.chains[0].vectors, vec![vec![Scalar::one()]]);

        let ex = corpus::worked_example();
        let set = jordan_chains(&ex.a, &jordan_structure(&ex.a).unwrap()).unwrap();
        assert_eq!(set.chains.len(), 2);
        let t = set.basis().unwrap();
        assert_eq!(&(&t.inverse().unwrap() * &ex.a) * &t, ex.j);
    }

    use num_traits::One;

    #[test]
    fn rejects_non_rational_input() {
        let m = ExactMatrix::new(1, 1, vec![Scalar::sqrt2()]).unwrap();
        assert_eq!(char_poly(&m), Err(Error::NonRationalMatrix));
    }
}
