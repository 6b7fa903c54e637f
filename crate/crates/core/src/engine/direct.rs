use std::collections::HashMap;

use rayon::prelude::*;

use super::{Certificate, EngineError, Verdict, VerdictKind};
use crate::gf2::{BitMatrix, BitVector};
use crate::group::{is_primitive, orbit_decomposition, MatrixGroup, DEFAULT_CAP_DIM};
use crate::rep::{find_invariant_subspace, MeatAxeOptions, ModuleTag};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DirectOptions {
    pub cap_dim: usize,
    pub meataxe: MeatAxeOptions,
}

impl Default for DirectOptions {
    fn default() -> Self {
        Self { cap_dim: DEFAULT_CAP_DIM, meataxe: MeatAxeOptions::default() }
    }
}

/// Decides extreme primitivity of `V:H` from the orbits of `H` on nonzero
/// vectors: it holds iff `H` is primitive on every orbit. `H` must act
/// irreducibly, otherwise `V:H` is not primitive at all.
pub fn direct_ep_check(h: &MatrixGroup, tag: &ModuleTag, opts: DirectOptions) -> Result<Verdict, EngineError> {
    if h.generators().iter().all(BitMatrix::is_identity) {
        return Err(EngineError::TrivialGroup);
    }
    let d = tag.induced_dim(h.dim())?;
    if d > opts.cap_dim {
        return Err(crate::group::GroupError::CapExceeded { what: "module dimension", value: d as u64, cap: opts.cap_dim as u64 }.into());
    }
    let gens = h.induced_generators(tag)?;
    if find_invariant_subspace(&gens, opts.meataxe)?.is_some() {
        return Err(EngineError::Reducible);
    }
    let dec = orbit_decomposition(h, tag, opts.cap_dim)?;
    let outcomes: Vec<_> = (0..dec.orbits().len())
        .into_par_iter()
        .map(|i| -> Result<_, EngineError> {
            let action = dec.permutation_action(i)?;
            Ok(is_primitive(&action)?.blocks)
        })
        .collect::<Result<_, _>>()?;
    for (i, blocks) in outcomes.into_iter().enumerate() {
        if let Some(blocks) = blocks {
            let orbit = &dec.orbits()[i];
            let points = orbit.points();
            let certificate = Certificate::Blocks {
                orbit_representative: orbit.representative().to_bit_string(),
                orbit_size: orbit.len(),
                blocks: blocks.iter().map(|b| b.iter().map(|&x| points[x].to_bit_string()).collect()).collect(),
            };
            return Ok(Verdict { kind: VerdictKind::NotEp, certificate: Some(certificate) });
        }
    }
    Ok(Verdict { kind: VerdictKind::Ep, certificate: Some(Certificate::PrimitiveOrbits { sizes: dec.sizes() }) })
}

fn parse_point(s: &str, d: usize) -> Option<BitVector> {
    (s.len() == d && s.bytes().all(|b| b == b'0' || b == b'1')).then(|| BitVector::from_bits(s.bytes().map(|b| b == b'1')))
}

/// Re-checks a block certificate against the induced generators: the blocks
/// are disjoint, of equal size between 2 and the orbit size, their union is
/// closed under the generators, and every generator maps blocks onto blocks.
pub fn verify_block_certificate(cert: &Certificate, induced: &[BitMatrix]) -> bool {
    let Certificate::Blocks { orbit_representative, orbit_size, blocks } = cert else {
        return false;
    };
    let Some(d) = induced.first().map(BitMatrix::nrows) else {
        return false;
    };
    let mut block_of: HashMap<BitVector, usize> = HashMap::new();
    for (i, b) in blocks.iter().enumerate() {
        for p in b {
            let Some(v) = parse_point(p, d) else { return false };
            if v.is_zero() || block_of.insert(v, i).is_some() {
                return false;
            }
        }
    }
    let size = blocks.first().map_or(0, Vec::len);
    let rep_ok = parse_point(orbit_representative, d).is_some_and(|r| block_of.contains_key(&r));
    if !rep_ok || size < 2 || block_of.len() != *orbit_size || size >= *orbit_size {
        return false;
    }
    if blocks.iter().any(|b| b.len() != size) {
        return false;
    }
    induced.iter().all(|g| {
        blocks.iter().all(|b| {
            let mut target = None;
            b.iter().all(|p| {
                let image = g.apply(&parse_point(p, d).expect("parsed above"));
                match (block_of.get(&image), target) {
                    (None, _) => false,
                    (Some(&t), None) => {
                        target = Some(t);
                        true
                    }
                    (Some(&t), Some(prev)) => t == prev,
                }
            })
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn group(gens: Vec<BitMatrix>) -> MatrixGroup {
        MatrixGroup::new(gens[0].nrows(), gens).unwrap()
    }

    #[test]
    fn gl3_is_ep() {
        let h = group(vec![BitMatrix::from_strs(&["110", "010", "001"]), BitMatrix::permutation(&[1, 2, 0])]);
        let v = direct_ep_check(&h, &ModuleTag::Natural, DirectOptions::default()).unwrap();
        assert_eq!(v.kind, VerdictKind::Ep);
    }

    #[test]
    fn singer_fifteen_is_not_ep() {
        let c = BitMatrix::companion(&[true, true, false, false]);
        let h = group(vec![c.clone()]);
        let v = direct_ep_check(&h, &ModuleTag::Natural, DirectOptions::default()).unwrap();
        assert_eq!(v.kind, VerdictKind::NotEp);
        let cert = v.certificate.unwrap();
        let Certificate::Blocks { blocks, .. } = &cert else { panic!() };
        assert!(blocks[0].len() == 3 || blocks[0].len() == 5);
        assert!(verify_block_certificate(&cert, &[c.clone()]));
        // a certificate for the wrong group fails
        assert!(!verify_block_certificate(&cert, &[BitMatrix::permutation(&[1, 2, 3, 0])]));
    }

    #[test]
    fn reducible_and_trivial_are_errors() {
        let a = BitMatrix::from_strs(&["1100", "0100", "0011", "0010"]);
        let b = BitMatrix::from_strs(&["0100", "1100", "1010", "1101"]);
        assert!(matches!(
            direct_ep_check(&group(vec![a, b]), &ModuleTag::Natural, DirectOptions::default()),
            Err(EngineError::Reducible)
        ));
        assert!(matches!(
            direct_ep_check(&group(vec![BitMatrix::identity(2)]), &ModuleTag::Natural, DirectOptions::default()),
            Err(EngineError::TrivialGroup)
        ));
    }
}
