use crate::incidence::{Block, IncidenceSystem};

use super::{EnumerateError, FamilyKind, MAX_CONST_INTERSECT_V, MAX_ODD_TOWN_V};

fn mask_to_block(mask: u32) -> Block {
    Block::new((0..32).filter(|&i| mask >> i & 1 == 1)).expect("bits are distinct")
}

/// Subsets of `0..v` (as bitmasks) passing `keep`, in lexicographic order
/// of their sorted point lists.
fn candidates(v: usize, keep: impl Fn(u32) -> bool) -> Vec<u32> {
    let mut masks: Vec<u32> = (0..1u32 << v).filter(|&m| keep(m)).collect();
    masks.sort_by_cached_key(|&m| mask_to_block(m));
    masks
}

#[derive(Clone, Copy, Debug)]
enum Constraint {
    /// Pairwise even intersections.
    EvenIntersections,
    /// All pairwise intersections share one size `k >= 1`.
    ConstantIntersection,
}

/// Lazy depth-first stream of families: strictly increasing index
/// sequences into a candidate list, where every prefix satisfies the
/// constraint. Each family is yielded once, blocks in candidate order.
#[derive(Clone, Debug)]
pub struct FamilyStream {
    v: usize,
    candidates: Vec<u32>,
    constraint: Constraint,
    min_size: usize,
    chosen: Vec<usize>,
    next: usize,
    pending: bool,
}

impl FamilyStream {
    fn new(v: usize, candidates: Vec<u32>, constraint: Constraint, min_size: usize) -> Self {
        FamilyStream { v, candidates, constraint, min_size, chosen: Vec::new(), next: 0, pending: true }
    }

    fn compatible(&self, cand: u32) -> bool {
        let meet = |idx: usize| (self.candidates[idx] & cand).count_ones();
        match self.constraint {
            Constraint::EvenIntersections => self.chosen.iter().all(|&i| meet(i) % 2 == 0),
            Constraint::ConstantIntersection => match self.chosen.as_slice() {
                [] => true,
                [first] => meet(*first) >= 1,
                [first, second, ..] => {
                    let k = (self.candidates[*first] & self.candidates[*second]).count_ones();
                    self.chosen.iter().all(|&i| meet(i) == k)
                }
            },
        }
    }

    fn current(&self) -> IncidenceSystem {
        let blocks = self.chosen.iter().map(|&i| mask_to_block(self.candidates[i])).collect();
        IncidenceSystem::new(self.v, blocks).expect("masks stay below 2^v")
    }
}

impl Iterator for FamilyStream {
    type Item = IncidenceSystem;

    fn next(&mut self) -> Option<IncidenceSystem> {
        loop {
            if self.pending {
                self.pending = false;
                if self.chosen.len() >= self.min_size {
                    return Some(self.current());
                }
            }
            let found = (self.next..self.candidates.len()).find(|&j| self.compatible(self.candidates[j]));
            match found {
                Some(j) => {
                    self.chosen.push(j);
                    self.next = j + 1;
                    self.pending = true;
                }
                None => {
                    let last = self.chosen.pop()?;
                    self.next = last + 1;
                }
            }
        }
    }
}

/// Every family of distinct odd-sized subsets of `0..v` with pairwise even
/// intersections, including the empty family.
pub fn enum_odd_town(v: usize) -> Result<FamilyStream, EnumerateError> {
    if v > MAX_ODD_TOWN_V {
        return Err(EnumerateError::VTooLarge { kind: FamilyKind::OddTown, v, max: MAX_ODD_TOWN_V });
    }
    let cands = candidates(v, |m| m.count_ones() % 2 == 1);
    Ok(FamilyStream::new(v, cands, Constraint::EvenIntersections, 0))
}

/// Every family of at least two distinct nonempty subsets of `0..v` whose
/// pairwise intersections all have the same size `k >= 1`.
pub fn enum_const_intersect(v: usize) -> Result<FamilyStream, EnumerateError> {
    if v > MAX_CONST_INTERSECT_V {
        return Err(EnumerateError::VTooLarge { kind: FamilyKind::ConstIntersect, v, max: MAX_CONST_INTERSECT_V });
    }
    let cands = candidates(v, |m| m != 0);
    Ok(FamilyStream::new(v, cands, Constraint::ConstantIntersection, 2))
}
