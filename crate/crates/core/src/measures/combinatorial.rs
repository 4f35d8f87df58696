//! Block sensitivity (maximum packing of sensitive blocks) and certificate
//! complexity (minimum hitting set of sensitive blocks).

use fixedbitset::FixedBitSet;

use super::{max_over_domain, Maximum};
use crate::error::Result;
use crate::function::{Block, PartialFunction, Word};

fn mask(n: usize, block: &Block) -> FixedBitSet {
    let mut m = FixedBitSet::with_capacity(n);
    for &i in block.indices() {
        m.insert(i);
    }
    m
}

/// Maximum number of pairwise disjoint sensitive blocks of `x`.
pub fn bs_at(f: &PartialFunction, x: &Word) -> Result<usize> {
    let mut blocks = f.sensitive_blocks(x)?.minimal_blocks();
    blocks.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    let masks: Vec<FixedBitSet> = blocks.iter().map(|b| mask(f.n(), b)).collect();
    let mut packer = Packer {
        n: f.n(),
        blocks: &masks,
        sizes: blocks.iter().map(Block::len).collect(),
        best: 0,
    };
    let mut used = FixedBitSet::with_capacity(f.n());
    packer.search(0, &mut used, 0, 0);
    Ok(packer.best)
}

struct Packer<'a> {
    n: usize,
    blocks: &'a [FixedBitSet],
    sizes: Vec<usize>,
    best: usize,
}

impl Packer<'_> {
    /// Blocks are sorted by size, so `free / sizes[start]` bounds how many more fit.
    fn search(&mut self, start: usize, used: &mut FixedBitSet, used_count: usize, count: usize) {
        self.best = self.best.max(count);
        for j in start..self.blocks.len() {
            let remaining = self.blocks.len() - j;
            let room = (self.n - used_count) / self.sizes[j];
            if count + remaining.min(room) <= self.best {
                return;
            }
            if used.is_disjoint(&self.blocks[j]) {
                used.union_with(&self.blocks[j]);
                self.search(j + 1, used, used_count + self.sizes[j], count + 1);
                used.difference_with(&self.blocks[j]);
            }
        }
    }
}

pub fn bs(f: &PartialFunction) -> Result<Maximum<usize>> {
    max_over_domain(f, |x| bs_at(f, x))
}

/// A smallest set of positions fixing `f(x)` within the domain, 0-based and sorted.
pub fn certificate_at(f: &PartialFunction, x: &Word) -> Result<Vec<usize>> {
    let mut blocks = f.sensitive_blocks(x)?.minimal_blocks();
    blocks.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    let masks: Vec<FixedBitSet> = blocks.iter().map(|b| mask(f.n(), b)).collect();
    let mut chosen = FixedBitSet::with_capacity(f.n());
    for size in 0..=f.n() {
        if hit_all(&masks, &mut chosen, size) {
            return Ok(chosen.ones().collect());
        }
    }
    unreachable!("the full index set hits every non-empty block")
}

/// Depth-limited search: branch on the positions of the first block not yet hit.
fn hit_all(blocks: &[FixedBitSet], chosen: &mut FixedBitSet, budget: usize) -> bool {
    let Some(open) = blocks.iter().find(|b| chosen.is_disjoint(b)) else {
        return true;
    };
    if budget == 0 {
        return false;
    }
    for i in open.ones() {
        chosen.insert(i);
        if hit_all(blocks, chosen, budget - 1) {
            return true;
        }
        chosen.set(i, false);
    }
    false
}

pub fn cert_at(f: &PartialFunction, x: &Word) -> Result<usize> {
    certificate_at(f, x).map(|c| c.len())
}

pub fn cert(f: &PartialFunction) -> Result<Maximum<usize>> {
    max_over_domain(f, |x| cert_at(f, x))
}
