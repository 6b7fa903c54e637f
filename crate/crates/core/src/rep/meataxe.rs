//! Irreducibility testing in the MeatAxe style.
//!
//! Random elements `θ` of the enveloping algebra are drawn from a seeded
//! generator. For a small polynomial `p` with `N = ker p(θ) ≠ 0`, either some
//! vector of `N` spins to a proper submodule, or (once every vector of `N` is
//! known to spin to the whole space) a single vector of `ker p(θ)^T` decides
//! the question through the dual module. When `dim N = deg p` for irreducible
//! `p`, one vector of `N` suffices (Norton).

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::RepError;
use crate::gf2::{kernel, BitMatrix, BitVector, EchelonBasis, Subspace};

/// `x, x+1`, then the irreducibles of degree 2, 3 and 4, bit-packed.
const POLYS: [u64; 8] = [0b10, 0b11, 0b111, 0b1011, 0b1101, 0b10011, 0b11001, 0b11111];

/// Kernels up to this dimension are checked vector by vector.
const SMALL_KERNEL: usize = 4;

/// Below this dimension the fallback spins every nonzero vector.
const EXHAUSTIVE_DIM: usize = 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MeatAxeOptions {
    pub seed: u64,
    pub attempts: usize,
}

impl Default for MeatAxeOptions {
    fn default() -> Self {
        Self { seed: 0, attempts: 64 }
    }
}

/// The smallest subspace containing `v` and invariant under every generator.
pub fn spin(gens: &[BitMatrix], v: &BitVector) -> Subspace {
    let d = v.len();
    let mut basis = EchelonBasis::new(d);
    let mut queue = Vec::new();
    if basis.insert(v.clone()).is_some() {
        queue.push(v.clone());
    }
    while let Some(w) = queue.pop() {
        if basis.dim() == d {
            break;
        }
        for g in gens {
            let image = g.apply(&w);
            if basis.insert(image.clone()).is_some() {
                queue.push(image);
            }
        }
    }
    Subspace::span(d, basis.into_rows()).expect("spin stays in the ambient space")
}

fn validate(gens: &[BitMatrix]) -> Result<usize, RepError> {
    let first = gens.first().ok_or(RepError::NoGenerators)?;
    let d = first.require_square()?;
    for (index, g) in gens.iter().enumerate() {
        let found = g.require_square()?;
        if found != d {
            return Err(RepError::SizeMismatch { index, expected: d, found });
        }
        if !g.is_invertible() {
            return Err(RepError::NonInvertible(index));
        }
    }
    Ok(d)
}

fn eval_poly(p: u64, theta: &BitMatrix) -> BitMatrix {
    let d = theta.nrows();
    let top = 63 - p.leading_zeros();
    let mut acc = BitMatrix::zeros(d, d);
    for i in (0..=top).rev() {
        acc = &acc * theta;
        if p >> i & 1 == 1 {
            acc = &acc + &BitMatrix::identity(d);
        }
    }
    acc
}

fn annihilator(dual: &Subspace) -> Subspace {
    let b = BitMatrix::from_rows(dual.basis().to_vec()).expect("proper dual subspace is nonzero");
    kernel(&b.transpose())
}

fn is_proper(s: &Subspace) -> bool {
    !s.is_zero() && !s.is_full()
}

struct Search<'a> {
    gens: &'a [BitMatrix],
    transposes: Vec<BitMatrix>,
    pool: Vec<BitMatrix>,
    rng: ChaCha8Rng,
    tried: Vec<BitVector>,
}

enum Outcome {
    Reducible(Subspace),
    Irreducible,
    Unknown,
}

impl<'a> Search<'a> {
    fn new(gens: &'a [BitMatrix], seed: u64) -> Self {
        Self {
            gens,
            transposes: gens.iter().map(BitMatrix::transpose).collect(),
            pool: gens.to_vec(),
            rng: ChaCha8Rng::seed_from_u64(seed),
            tried: Vec::new(),
        }
    }

    fn random_element(&mut self) -> BitMatrix {
        let i = self.rng.gen_range(0..self.pool.len());
        let j = self.rng.gen_range(0..self.pool.len());
        let product = &self.pool[i] * &self.pool[j];
        if self.pool.len() < 4 * self.gens.len() + 16 {
            self.pool.push(product.clone());
        }
        let d = product.nrows();
        let mut theta = product;
        for g in &self.pool {
            if self.rng.gen_bool(0.5) {
                theta = &theta + g;
            }
        }
        if self.rng.gen_bool(0.5) {
            theta = &theta + &BitMatrix::identity(d);
        }
        theta
    }

    fn attempt(&mut self) -> Outcome {
        let theta = self.random_element();
        for p in POLYS {
            let pt = eval_poly(p, &theta);
            let n = kernel(&pt);
            if n.is_zero() {
                continue;
            }
            let v = n.basis()[0].clone();
            if self.tried.len() < 256 {
                self.tried.push(v.clone());
            }
            let s = spin(self.gens, &v);
            if is_proper(&s) {
                return Outcome::Reducible(s);
            }
            let degree = (63 - p.leading_zeros()) as usize;
            let settled = if n.dim() == degree {
                true
            } else if n.dim() <= SMALL_KERNEL {
                for w in n.elements().into_iter().filter(|w| !w.is_zero()) {
                    let s = spin(self.gens, &w);
                    if is_proper(&s) {
                        return Outcome::Reducible(s);
                    }
                }
                true
            } else {
                false
            };
            if settled {
                let dual = kernel(&pt.transpose());
                let s = spin(&self.transposes, &dual.basis()[0]);
                return if is_proper(&s) {
                    Outcome::Reducible(annihilator(&s))
                } else {
                    Outcome::Irreducible
                };
            }
        }
        Outcome::Unknown
    }
}

/// A proper nonzero invariant subspace, or `None` when the generated algebra
/// acts irreducibly.
pub fn find_invariant_subspace(gens: &[BitMatrix], opts: MeatAxeOptions) -> Result<Option<Subspace>, RepError> {
    let d = validate(gens)?;
    if d == 1 {
        return Ok(None);
    }
    let mut search = Search::new(gens, opts.seed);
    for _ in 0..opts.attempts {
        match search.attempt() {
            Outcome::Reducible(s) => return Ok(Some(s)),
            Outcome::Irreducible => return Ok(None),
            Outcome::Unknown => {}
        }
    }
    // deterministic fallback
    let candidates = (0..d).map(|i| BitVector::unit(d, i)).chain(search.tried.clone());
    for v in candidates {
        let s = spin(gens, &v);
        if is_proper(&s) {
            return Ok(Some(s));
        }
    }
    if d <= EXHAUSTIVE_DIM {
        for code in 1u64..1 << d {
            let s = spin(gens, &BitVector::from_code(code, d));
            if is_proper(&s) {
                return Ok(Some(s));
            }
        }
        return Ok(None);
    }
    let extra = 8 * opts.attempts.max(1);
    for _ in 0..extra {
        match search.attempt() {
            Outcome::Reducible(s) => return Ok(Some(s)),
            Outcome::Irreducible => return Ok(None),
            Outcome::Unknown => {}
        }
    }
    Err(RepError::Undecided(opts.attempts + extra))
}

pub fn is_irreducible_with(gens: &[BitMatrix], opts: MeatAxeOptions) -> Result<bool, RepError> {
    Ok(find_invariant_subspace(gens, opts)?.is_none())
}

pub fn is_irreducible(gens: &[BitMatrix]) -> Result<bool, RepError> {
    is_irreducible_with(gens, MeatAxeOptions::default())
}
