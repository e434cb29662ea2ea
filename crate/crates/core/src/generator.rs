//! Seeded construction of H-selfadjoint test pairs with known canonical data.
//!
//! A recipe fixes the real Jordan form `J_R` and the sip matrix `P`. An
//! integer matrix `T` is drawn and the pair is `A = T J_R T^-1`,
//! `H = T^-T P T^-1`, so that `T` is a real canonical basis for `(A, H)`.
//!
//! Randomness comes from `XorShiftRng::seed_from_u64(seed)` (the `rand_xorshift`
//! crate; the seed is expanded to the 128-bit state by `rand_core`'s PCG32
//! routine). Every entry of `T` is `next_u32() % (2 * bound + 1) - bound`, drawn
//! row by row; singular draws are discarded.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;

use rand_core::{RngCore, SeedableRng};
use rand_xorshift::XorShiftRng;

use crate::canonical::{BasisKind, CanonicalPair, PairKind, SignCharacteristic, SignEntry};
use crate::error::{Error, Result};
use crate::layout::BlockLayout;
use crate::linalg::ExactMatrix;
use crate::scalar::{ratio, Rational, Scalar};
use crate::spectral::{ComplexBlocks, JordanSpec, RealBlocks};

pub const DEFAULT_ENTRY_BOUND: u32 = 3;
const MAX_ATTEMPTS: usize = 1000;
/// Mixed into the seed so recipe choice and `T` use different streams.
const RECIPE_STREAM: u64 = 0x9E37_79B9_7F4A_7C15;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GeneratorRecipe {
    pub spec: JordanSpec,
    /// One sign per real block of `spec`.
    pub signs: SignCharacteristic,
    pub seed: u64,
    /// Entries of `T` are drawn from `-entry_bound..=entry_bound`.
    pub entry_bound: u32,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GeneratedPair {
    pub a: ExactMatrix,
    pub h: ExactMatrix,
    /// Real canonical data with the drawn `T` as basis.
    pub truth: CanonicalPair,
}

fn draw(rng: &mut XorShiftRng, bound: u32) -> i64 {
    let width = 2 * u64::from(bound) + 1;
    (u64::from(rng.next_u32()) % width) as i64 - i64::from(bound)
}

fn invertible_from(rng: &mut XorShiftRng, n: usize, bound: u32) -> Result<ExactMatrix> {
    if bound == 0 {
        return Err(Error::InvalidSpec("entry bound must be positive".into()));
    }
    for _ in 0..MAX_ATTEMPTS {
        let t = ExactMatrix::from_fn(n, n, |_, _| Scalar::from_int(draw(rng, bound)));
        if t.is_invertible() {
            return Ok(t);
        }
    }
    Err(Error::GeneratorExhausted { attempts: MAX_ATTEMPTS })
}

/// An invertible `n x n` integer matrix with entries in `-bound..=bound`.
pub fn random_invertible(seed: u64, n: usize, bound: u32) -> Result<ExactMatrix> {
    invertible_from(&mut XorShiftRng::seed_from_u64(seed), n, bound)
}

/// Builds `(A, H)` from the recipe.
pub fn generate_pair(recipe: &GeneratorRecipe) -> Result<GeneratedPair> {
    if !recipe.signs.matches(&recipe.spec) {
        return Err(Error::InvalidSpec(format!(
            "{} signs do not cover the real blocks of the specification",
            recipe.signs.entries().len()
        )));
    }
    let layout = BlockLayout::from_spec(&recipe.spec);
    let n = layout.dimension();
    if n == 0 {
        return Err(Error::InvalidSpec("empty specification".into()));
    }
    let mut signs = recipe.signs.signs();
    signs.resize(layout.blocks().len(), 1);
    let p = crate::canonical::build_sip(&layout.widths(), &signs)?;
    let j = layout.real_jordan();
    let t = random_invertible(recipe.seed, n, recipe.entry_bound)?;
    let t_inv = t.inverse()?;
    let a = t.matmul(&j)?.matmul(&t_inv)?;
    let h = t_inv.transpose().matmul(&p)?.matmul(&t_inv)?;
    let truth = CanonicalPair {
        kind: PairKind::Real,
        basis_kind: BasisKind::RealCanonical,
        spec: recipe.spec.clone(),
        layout,
        j,
        p,
        basis: t,
        signs: recipe.signs.clone(),
    };
    Ok(GeneratedPair { a, h, truth })
}

fn pick<'a, T>(rng: &mut XorShiftRng, items: &'a [T]) -> &'a T {
    &items[rng.next_u32() as usize % items.len()]
}

/// A random recipe of dimension at most `max_dim` (at least 1).
///
/// Real eigenvalues come from `{-2, -1, -1/2, 0, 1/2, 1, 2}` with blocks of
/// size 1 to 3; pairs `sigma ± tau i` use `sigma` in `{-1, -1/2, 0, 1}`, `tau`
/// in `{1/2, 1, 2}` and sizes 1 to 2. No two blocks share both eigenvalue and
/// size, which keeps every normalization inside `Q(i, sqrt 2)`.
pub fn random_recipe(seed: u64, max_dim: usize) -> Result<GeneratorRecipe> {
    if max_dim == 0 {
        return Err(Error::InvalidSpec("dimension must be positive".into()));
    }
    let mut rng = XorShiftRng::seed_from_u64(seed ^ RECIPE_STREAM);
    let reals: Vec<Rational> = [(-2, 1), (-1, 1), (-1, 2), (0, 1), (1, 2), (1, 1), (2, 1)]
        .iter()
        .map(|&(n, d)| ratio(n, d))
        .collect();
    let sigmas: Vec<Rational> = [(-1, 1), (-1, 2), (0, 1), (1, 1)].iter().map(|&(n, d)| ratio(n, d)).collect();
    let taus: Vec<Rational> = [(1, 2), (1, 1), (2, 1)].iter().map(|&(n, d)| ratio(n, d)).collect();

    let target = 1 + rng.next_u32() as usize % max_dim;
    let mut real: BTreeMap<Rational, Vec<usize>> = BTreeMap::new();
    let mut nonreal: BTreeMap<(Rational, Rational), Vec<usize>> = BTreeMap::new();
    let mut entries = Vec::new();
    let mut dim = 0;
    let mut tries = 0;
    while dim < target && tries < 200 {
        tries += 1;
        let room = target - dim;
        if room >= 2 && rng.next_u32() % 2 == 0 {
            let size = 1 + rng.next_u32() as usize % 2.min(room / 2);
            let key = (pick(&mut rng, &sigmas).clone(), pick(&mut rng, &taus).clone());
            let sizes = nonreal.entry(key).or_default();
            if !sizes.contains(&size) {
                sizes.push(size);
                dim += 2 * size;
            }
        } else {
            let size = 1 + rng.next_u32() as usize % 3.min(room);
            let lambda = pick(&mut rng, &reals).clone();
            let eps = if rng.next_u32() % 2 == 0 { 1 } else { -1 };
            let sizes = real.entry(lambda.clone()).or_default();
            if !sizes.contains(&size) {
                sizes.push(size);
                dim += size;
                entries.push(SignEntry { lambda, size, eps });
            }
        }
    }
    nonreal.retain(|_, sizes| !sizes.is_empty());
    real.retain(|_, sizes| !sizes.is_empty());
    let spec = JordanSpec::new(
        real.into_iter().map(|(lambda, sizes)| RealBlocks { lambda, sizes }).collect(),
        nonreal.into_iter().map(|((sigma, tau), sizes)| ComplexBlocks { sigma, tau, sizes }).collect(),
    )?;
    Ok(GeneratorRecipe { spec, signs: SignCharacteristic::new(entries)?, seed, entry_bound: DEFAULT_ENTRY_BOUND })
}
