use itertools::Itertools;

use crate::incidence::{Block, IncidenceSystem};

use super::{EnumerateError, MAX_BIBD_V};

struct Search {
    v: usize,
    lambda: usize,
    b: usize,
    blocks: Vec<Vec<usize>>,
    /// pair_count[x * v + y] for x < y
    pair_count: Vec<usize>,
    chosen: Vec<usize>,
    limit: usize,
    found: Vec<IncidenceSystem>,
}

impl Search {
    fn first_deficient_pair(&self) -> Option<(usize, usize)> {
        (0..self.v)
            .flat_map(|x| (x + 1..self.v).map(move |y| (x, y)))
            .find(|&(x, y)| self.pair_count[x * self.v + y] < self.lambda)
    }

    fn pairs(block: &[usize]) -> impl Iterator<Item = (usize, usize)> + '_ {
        block.iter().tuple_combinations().map(|(&x, &y)| (x, y))
    }

    fn fits(&self, idx: usize) -> bool {
        Self::pairs(&self.blocks[idx]).all(|(x, y)| self.pair_count[x * self.v + y] < self.lambda)
    }

    fn apply(&mut self, idx: usize, delta: isize) {
        let v = self.v;
        for (x, y) in Self::pairs(&self.blocks[idx]).collect::<Vec<_>>() {
            let c = &mut self.pair_count[x * v + y];
            *c = c.checked_add_signed(delta).expect("pair count stays non-negative");
        }
    }

    /// Blocks are always chosen to cover the smallest pair still short of
    /// `λ`; successive blocks covering the same pair are taken in
    /// non-decreasing order. This produces every block multiset exactly
    /// once.
    fn run(&mut self, prev: Option<((usize, usize), usize)>) {
        if self.found.len() >= self.limit {
            return;
        }
        let Some((x, y)) = self.first_deficient_pair() else {
            if self.chosen.len() == self.b {
                let mut blocks: Vec<Block> =
                    self.chosen.iter().map(|&i| Block::new(self.blocks[i].iter().copied()).expect("k-subset")).collect();
                blocks.sort();
                self.found.push(IncidenceSystem::new(self.v, blocks).expect("points below v"));
            }
            return;
        };
        let start = match prev {
            Some((pair, idx)) if pair == (x, y) => idx,
            _ => 0,
        };
        for idx in start..self.blocks.len() {
            let blk = &self.blocks[idx];
            if !(blk.contains(&x) && blk.contains(&y)) || !self.fits(idx) {
                continue;
            }
            self.apply(idx, 1);
            self.chosen.push(idx);
            self.run(Some(((x, y), idx)));
            self.chosen.pop();
            self.apply(idx, -1);
            if self.found.len() >= self.limit {
                return;
            }
        }
    }
}

/// Up to `limit` distinct `(v, k, λ)`-BIBDs, each with blocks in
/// lexicographic order, found by depth-first search over `k`-subsets with
/// pair-coverage pruning. Parameter sets failing the divisibility
/// conditions (`r = λ(v-1)/(k-1)` and `b = λv(v-1)/(k(k-1))` integral)
/// give an empty result.
pub fn enum_bibd(v: usize, k: usize, lambda: usize, limit: usize) -> Result<Vec<IncidenceSystem>, EnumerateError> {
    if k < 2 || k >= v || v > MAX_BIBD_V || lambda == 0 {
        return Err(EnumerateError::BibdParameters { v, k, lambda });
    }
    let r_num = lambda * (v - 1);
    let b_num = lambda * v * (v - 1);
    if !r_num.is_multiple_of(k - 1) || !b_num.is_multiple_of(k * (k - 1)) {
        return Ok(Vec::new());
    }
    let mut search = Search {
        v,
        lambda,
        b: b_num / (k * (k - 1)),
        blocks: (0..v).combinations(k).collect(),
        pair_count: vec![0; v * v],
        chosen: Vec::new(),
        limit,
        found: Vec::new(),
    };
    search.run(None);
    Ok(search.found)
}
