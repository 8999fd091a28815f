//! Block systems of imprimitivity and the action on blocks.

use crate::error::{Error, Result};
use crate::group::PermGroup;
use crate::hom::GroupHom;
use crate::perm::Perm;

/// A partition of the domain. Blocks are sorted internally and numbered by
/// their smallest point, ascending.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockSystem {
    degree: usize,
    block_of: Vec<usize>,
    blocks: Vec<Vec<usize>>,
}

impl BlockSystem {
    pub(crate) fn from_blocks0(degree: usize, mut blocks: Vec<Vec<usize>>) -> Result<BlockSystem> {
        let mut block_of = vec![usize::MAX; degree];
        for b in blocks.iter_mut() {
            if b.is_empty() {
                return Err(Error::Input("empty block".into()));
            }
            b.sort_unstable();
        }
        blocks.sort_by_key(|b| b[0]);
        for (i, b) in blocks.iter().enumerate() {
            for &x in b {
                if x >= degree {
                    return Err(Error::PointOutOfRange {
                        point: x + 1,
                        degree,
                    });
                }
                if block_of[x] != usize::MAX {
                    return Err(Error::Input(format!("point {} lies in two blocks", x + 1)));
                }
                block_of[x] = i;
            }
        }
        if let Some(x) = block_of.iter().position(|&b| b == usize::MAX) {
            return Err(Error::Input(format!("point {} lies in no block", x + 1)));
        }
        Ok(BlockSystem {
            degree,
            block_of,
            blocks,
        })
    }

    /// Builds a partition from 1-based blocks.
    pub fn from_blocks(degree: usize, blocks: &[Vec<usize>]) -> Result<BlockSystem> {
        let blocks0 = blocks
            .iter()
            .map(|b| {
                b.iter()
                    .map(|&x| {
                        if x == 0 {
                            Err(Error::PointOutOfRange { point: 0, degree })
                        } else {
                            Ok(x - 1)
                        }
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        BlockSystem::from_blocks0(degree, blocks0)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn num_blocks(&self) -> usize {
        self.blocks.len()
    }

    /// Blocks as 1-based sorted point lists.
    pub fn blocks(&self) -> Vec<Vec<usize>> {
        self.blocks
            .iter()
            .map(|b| b.iter().map(|x| x + 1).collect())
            .collect()
    }

    pub(crate) fn blocks0(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    /// Index of the block containing the 1-based point `x`.
    pub fn block_of(&self, x: usize) -> Result<usize> {
        if x == 0 || x > self.degree {
            return Err(Error::PointOutOfRange {
                point: x,
                degree: self.degree,
            });
        }
        Ok(self.block_of[x - 1])
    }

    /// Common block size, if all blocks have the same size.
    pub fn block_size(&self) -> Option<usize> {
        let s = self.blocks[0].len();
        self.blocks.iter().all(|b| b.len() == s).then_some(s)
    }

    pub fn is_trivial(&self) -> bool {
        self.blocks.len() == 1 || self.blocks.len() == self.degree
    }

    /// Image block index of block `i` under `g`, if `g` maps it onto a block.
    fn image_block(&self, g: &Perm, i: usize) -> Option<usize> {
        let b = &self.blocks[i];
        let j = self.block_of[g.image(b[0])];
        (self.blocks[j].len() == b.len() && b.iter().all(|&x| self.block_of[g.image(x)] == j))
            .then_some(j)
    }

    pub fn is_invariant_under(&self, g: &PermGroup) -> bool {
        g.degree() == self.degree
            && g.generators()
                .iter()
                .all(|x| (0..self.blocks.len()).all(|i| self.image_block(x, i).is_some()))
    }

    /// Permutation of block indices induced by `g`.
    pub(crate) fn induced(&self, g: &Perm) -> Result<Perm> {
        let images = (0..self.blocks.len())
            .map(|i| self.image_block(g, i).ok_or(Error::NotInvariant))
            .collect::<Result<Vec<_>>>()?;
        Perm::from_images0(images)
    }
}

/// The orbits of a normal subgroup `n` of `g`, as a `g`-invariant system.
pub fn orbits_block_system(g: &PermGroup, n: &PermGroup) -> Result<BlockSystem> {
    if g.degree() != n.degree() {
        return Err(Error::DegreeMismatch {
            expected: g.degree(),
            actual: n.degree(),
        });
    }
    if !n.is_normal_in(g) {
        return Err(Error::NotNormal("orbit partition needs a normal subgroup".into()));
    }
    let sys = BlockSystem::from_blocks0(g.degree(), n.orbits0())?;
    debug_assert!(sys.is_invariant_under(g));
    Ok(sys)
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> UnionFind {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Merges two classes; the smaller root survives. Returns the pair of
    /// roots merged, if they were distinct.
    fn union(&mut self, a: usize, b: usize) -> Option<(usize, usize)> {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return None;
        }
        let (keep, gone) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.parent[gone] = keep;
        Some((keep, gone))
    }
}

pub(crate) fn minimal_block0(g: &PermGroup, a: usize, b: usize) -> BlockSystem {
    let n = g.degree();
    let mut uf = UnionFind::new(n);
    let mut pending = Vec::new();
    pending.extend(uf.union(a, b));
    let gens = g.nontrivial_generators();
    while let Some((x, y)) = pending.pop() {
        for s in &gens {
            pending.extend(uf.union(s.image(x), s.image(y)));
        }
    }
    let mut classes: Vec<Vec<usize>> = vec![Vec::new(); n];
    for x in 0..n {
        let r = uf.find(x);
        classes[r].push(x);
    }
    let blocks = classes.into_iter().filter(|c| !c.is_empty()).collect();
    BlockSystem::from_blocks0(n, blocks).expect("union-find classes partition the domain")
}

/// Finest `g`-invariant partition putting the 1-based points `a` and `b`
/// in one block.
pub fn minimal_block(g: &PermGroup, a: usize, b: usize) -> Result<BlockSystem> {
    for x in [a, b] {
        if x == 0 || x > g.degree() {
            return Err(Error::PointOutOfRange {
                point: x,
                degree: g.degree(),
            });
        }
    }
    if a == b {
        return Err(Error::Input("minimal block needs two distinct points".into()));
    }
    if !g.is_transitive() {
        return Err(Error::NotTransitive);
    }
    Ok(minimal_block0(g, a - 1, b - 1))
}

/// Action of `g` on the blocks of an invariant system.
pub fn block_action(g: &PermGroup, sys: &BlockSystem) -> Result<GroupHom> {
    if !sys.is_invariant_under(g) {
        return Err(Error::NotInvariant);
    }
    let images = g
        .generators()
        .iter()
        .map(|x| sys.induced(x))
        .collect::<Result<Vec<_>>>()?;
    GroupHom::new(g.clone(), sys.num_blocks(), images)
}

pub fn is_primitive(g: &PermGroup) -> Result<bool> {
    if !g.is_transitive() {
        return Err(Error::NotTransitive);
    }
    Ok((1..g.degree()).all(|b| minimal_block0(g, 0, b).num_blocks() == 1))
}

/// Some nontrivial block system of a transitive imprimitive group.
pub fn nontrivial_block_system(g: &PermGroup) -> Result<Option<BlockSystem>> {
    if !g.is_transitive() {
        return Err(Error::NotTransitive);
    }
    Ok((1..g.degree())
        .map(|b| minimal_block0(g, 0, b))
        .find(|s| s.num_blocks() > 1))
}

/// Setwise stabilizer of block `i` of an invariant system.
pub(crate) fn block_stabilizer(action: &GroupHom, i: usize) -> Result<PermGroup> {
    let st = action.image().stabilizer0(i);
    action.preimage(&st)
}
