use rayon::prelude::*;

use super::{GroupError, PermAction};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Primitivity {
    pub primitive: bool,
    /// A nontrivial block system when the action is imprimitive, blocks
    /// sorted by least point.
    pub blocks: Option<Vec<Vec<usize>>>,
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn find(&mut self, mut x: usize) -> usize {
        while self.0[x] != x {
            self.0[x] = self.0[self.0[x]];
            x = self.0[x];
        }
        x
    }
}

/// The finest block system in which `0` and `beta` share a block.
fn minimal_blocks(p: &PermAction, beta: usize) -> Vec<Vec<usize>> {
    let n = p.degree();
    let mut uf = UnionFind((0..n).collect());
    let mut pending = vec![(0usize, beta)];
    uf.0[beta] = 0;
    while let Some((a, b)) = pending.pop() {
        for img in p.images() {
            let (x, y) = (img[a] as usize, img[b] as usize);
            let (rx, ry) = (uf.find(x), uf.find(y));
            if rx != ry {
                let (lo, hi) = (rx.min(ry), rx.max(ry));
                uf.0[hi] = lo;
                pending.push((x, y));
            }
        }
    }
    let mut classes: Vec<Vec<usize>> = vec![Vec::new(); n];
    for x in 0..n {
        let r = uf.find(x);
        classes[r].push(x);
    }
    classes.retain(|c| !c.is_empty());
    classes
}

/// Primitivity of a transitive action. Each `β` is tried independently, and
/// the certificate comes from the least `β` with a nontrivial closure.
pub fn is_primitive(p: &PermAction) -> Result<Primitivity, GroupError> {
    if !p.is_transitive() {
        return Err(GroupError::Intransitive(p.degree()));
    }
    let n = p.degree();
    let found = (1..n).into_par_iter().find_map_first(|beta| {
        let blocks = minimal_blocks(p, beta);
        (blocks.len() > 1).then_some(blocks)
    });
    Ok(Primitivity { primitive: found.is_none(), blocks: found })
}

/// True iff `blocks` partitions the points into at least two blocks of equal
/// size greater than one, and every generator permutes the blocks.
pub fn verify_block_system(p: &PermAction, blocks: &[Vec<usize>]) -> bool {
    let n = p.degree();
    let Some(size) = blocks.first().map(Vec::len) else {
        return false;
    };
    if size < 2 || size >= n || blocks.iter().any(|b| b.len() != size) {
        return false;
    }
    let mut block_of = vec![usize::MAX; n];
    for (i, b) in blocks.iter().enumerate() {
        for &x in b {
            if x >= n || block_of[x] != usize::MAX {
                return false;
            }
            block_of[x] = i;
        }
    }
    if block_of.contains(&usize::MAX) {
        return false;
    }
    p.images().iter().all(|img| {
        blocks.iter().all(|b| {
            let target = block_of[img[b[0]] as usize];
            b.iter().all(|&x| block_of[img[x] as usize] == target)
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: usize) -> PermAction {
        PermAction::new(n, vec![(0..n as u32).map(|i| (i + 1) % n as u32).collect()]).unwrap()
    }

    #[test]
    fn prime_cycles_are_primitive() {
        for n in [2, 3, 5, 7, 11, 13] {
            assert!(is_primitive(&cycle(n)).unwrap().primitive, "n = {n}");
        }
    }

    #[test]
    fn composite_cycle_has_blocks() {
        let p = cycle(15);
        let r = is_primitive(&p).unwrap();
        assert!(!r.primitive);
        let blocks = r.blocks.unwrap();
        assert!(blocks[0].len() == 3 || blocks[0].len() == 5);
        assert!(verify_block_system(&p, &blocks));
        // β = 1 and β = 2 close to everything, β = 3 gives blocks of size 5
        assert_eq!(blocks[0], vec![0, 3, 6, 9, 12]);
    }

    #[test]
    fn intransitive_is_an_error() {
        let p = PermAction::new(3, vec![vec![1, 0, 2]]).unwrap();
        assert!(matches!(is_primitive(&p), Err(GroupError::Intransitive(3))));
    }

    #[test]
    fn bad_certificates_fail() {
        let p = cycle(6);
        assert!(verify_block_system(&p, &[vec![0, 3], vec![1, 4], vec![2, 5]]));
        assert!(!verify_block_system(&p, &[vec![0, 1], vec![2, 3], vec![4, 5]]));
        assert!(!verify_block_system(&p, &[vec![0, 1, 2, 3, 4, 5]]));
        assert!(!verify_block_system(&p, &[vec![0, 3], vec![1, 4]]));
    }
}
