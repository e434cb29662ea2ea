//! Block layout of a canonical form: which columns belong to which Jordan
//! block, and the complex and real Jordan matrices it determines.

use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::linalg::ExactMatrix;
use crate::scalar::{Rational, Scalar};
use crate::spectral::JordanSpec;

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Block {
    /// One Jordan block at a real eigenvalue.
    Real { lambda: Rational, size: usize },
    /// A block at `sigma + tau*i` together with the equal-size block at its
    /// conjugate; occupies `2 * size` columns.
    Pair { sigma: Rational, tau: Rational, size: usize },
}

impl Block {
    pub fn size(&self) -> usize {
        match self {
            Block::Real { size, .. } | Block::Pair { size, .. } => *size,
        }
    }

    /// Number of columns occupied.
    pub fn width(&self) -> usize {
        match self {
            Block::Real { size, .. } => *size,
            Block::Pair { size, .. } => 2 * size,
        }
    }

    pub fn is_pair(&self) -> bool {
        matches!(self, Block::Pair { .. })
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct BlockLayout {
    blocks: Vec<Block>,
}

impl BlockLayout {
    pub fn new(blocks: Vec<Block>) -> Self {
        BlockLayout { blocks }
    }

    /// Real blocks first, then pairs, each group in the spec's order.
    pub fn from_spec(spec: &JordanSpec) -> Self {
        let mut blocks = Vec::new();
        for g in &spec.real {
            blocks.extend(g.sizes.iter().map(|&size| Block::Real { lambda: g.lambda.clone(), size }));
        }
        for g in &spec.nonreal {
            blocks.extend(
                g.sizes.iter().map(|&size| Block::Pair { sigma: g.sigma.clone(), tau: g.tau.clone(), size }),
            );
        }
        BlockLayout { blocks }
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    pub fn dimension(&self) -> usize {
        self.blocks.iter().map(Block::width).sum()
    }

    /// `(first column, block)` for every block.
    pub fn placed(&self) -> impl Iterator<Item = (usize, &Block)> {
        self.blocks.iter().scan(0, |start, b| {
            let here = *start;
            *start += b.width();
            Some((here, b))
        })
    }

    pub fn real_block_count(&self) -> usize {
        self.blocks.iter().filter(|b| !b.is_pair()).count()
    }

    /// Column widths, i.e. the sizes of the sip blocks.
    pub fn widths(&self) -> Vec<usize> {
        self.blocks.iter().map(Block::width).collect()
    }

    /// Complex Jordan form: `J(lambda)` for real blocks, `J(lambda) ⊕ J(conj lambda)`
    /// for pairs.
    pub fn complex_jordan(&self) -> ExactMatrix {
        let mut parts = Vec::new();
        for b in &self.blocks {
            match b {
                Block::Real { lambda, size } => parts.push(jordan_block(&Scalar::from_rational(lambda.clone()), *size)),
                Block::Pair { sigma, tau, size } => {
                    let lambda = Scalar::gaussian(sigma.clone(), tau.clone());
                    parts.push(jordan_block(&lambda, *size));
                    parts.push(jordan_block(&lambda.conj(), *size));
                }
            }
        }
        ExactMatrix::block_diag(&parts)
    }

    /// Real Jordan form: pairs become `2 * size` blocks with `[[sigma, tau], [-tau, sigma]]`
    /// on the diagonal and `I_2` on the block superdiagonal.
    pub fn real_jordan(&self) -> ExactMatrix {
        let parts: Vec<ExactMatrix> = self
            .blocks
            .iter()
            .map(|b| match b {
                Block::Real { lambda, size } => jordan_block(&Scalar::from_rational(lambda.clone()), *size),
                Block::Pair { sigma, tau, size } => real_pair_block(sigma, tau, *size),
            })
            .collect();
        ExactMatrix::block_diag(&parts)
    }
}

/// Upper-triangular Jordan block with ones on the superdiagonal.
pub fn jordan_block(lambda: &Scalar, size: usize) -> ExactMatrix {
    ExactMatrix::from_fn(size, size, |r, c| {
        if r == c {
            lambda.clone()
        } else if c == r + 1 {
            Scalar::one()
        } else {
            Scalar::zero()
        }
    })
}

fn real_pair_block(sigma: &Rational, tau: &Rational, size: usize) -> ExactMatrix {
    let sigma = Scalar::from_rational(sigma.clone());
    let tau = Scalar::from_rational(tau.clone());
    ExactMatrix::from_fn(2 * size, 2 * size, |r, c| {
        let (br, bc) = (r / 2, c / 2);
        let (ir, ic) = (r % 2, c % 2);
        if br == bc {
            match (ir, ic) {
                (0, 0) | (1, 1) => sigma.clone(),
                (0, 1) => tau.clone(),
                _ => -&tau,
            }
        } else if bc == br + 1 && ir == ic {
            Scalar::one()
        } else {
            Scalar::zero()
        }
    })
}
