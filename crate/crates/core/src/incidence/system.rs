use std::fmt;

use serde::Serialize;

use super::IncidenceError;

/// A block: a set of point indices, stored sorted and without repeats.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct Block(Vec<usize>);

impl Block {
    /// Fails on a repeated point; order of the input is irrelevant.
    pub fn new(points: impl IntoIterator<Item = usize>) -> Result<Self, IncidenceError> {
        let mut pts: Vec<usize> = points.into_iter().collect();
        pts.sort_unstable();
        if let Some(w) = pts.windows(2).find(|w| w[0] == w[1]) {
            return Err(IncidenceError::DuplicatePoint { point: w[0] });
        }
        Ok(Block(pts))
    }

    pub(crate) fn from_sorted(points: Vec<usize>) -> Self {
        debug_assert!(points.windows(2).all(|w| w[0] < w[1]));
        Block(points)
    }

    pub fn empty() -> Self {
        Block(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, point: usize) -> bool {
        self.0.binary_search(&point).is_ok()
    }

    pub fn points(&self) -> &[usize] {
        &self.0
    }

    pub fn is_superset_of(&self, points: &[usize]) -> bool {
        points.iter().all(|&p| self.contains(p))
    }

    /// `|self ∩ other|` by merging the two sorted lists.
    pub fn intersection_size(&self, other: &Block) -> usize {
        let (a, b) = (&self.0, &other.0);
        let (mut i, mut j, mut n) = (0, 0, 0);
        while i < a.len() && j < b.len() {
            match a[i].cmp(&b[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    n += 1;
                    i += 1;
                    j += 1;
                }
            }
        }
        n
    }

    pub(crate) fn map_points(&self, perm: &[usize]) -> Block {
        let mut pts: Vec<usize> = self.0.iter().map(|&p| perm[p]).collect();
        pts.sort_unstable();
        Block(pts)
    }
}

impl fmt::Display for Block {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(usize::to_string).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

/// Points `0..v` and an ordered list of blocks. Block order and
/// multiplicity are part of the value.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct IncidenceSystem {
    v: usize,
    blocks: Vec<Block>,
}

impl IncidenceSystem {
    /// Fails unless every block is a subset of `0..v`.
    pub fn new(v: usize, blocks: Vec<Block>) -> Result<Self, IncidenceError> {
        for block in &blocks {
            if let Some(&point) = block.points().iter().find(|&&p| p >= v) {
                return Err(IncidenceError::PointOutOfRange { point, v });
            }
        }
        Ok(IncidenceSystem { v, blocks })
    }

    /// Convenience constructor from plain point lists.
    pub fn from_lists<B, I>(v: usize, lists: I) -> Result<Self, IncidenceError>
    where
        I: IntoIterator<Item = B>,
        B: IntoIterator<Item = usize>,
    {
        let blocks = lists.into_iter().map(Block::new).collect::<Result<_, _>>()?;
        Self::new(v, blocks)
    }

    pub fn v(&self) -> usize {
        self.v
    }

    pub fn b(&self) -> usize {
        self.blocks.len()
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    pub fn block(&self, j: usize) -> Result<&Block, IncidenceError> {
        self.blocks
            .get(j)
            .ok_or(IncidenceError::IndexOutOfRange { what: "block", index: j, bound: self.b() })
    }

    fn check_point(&self, x: usize) -> Result<(), IncidenceError> {
        if x >= self.v {
            return Err(IncidenceError::IndexOutOfRange { what: "point", index: x, bound: self.v });
        }
        Ok(())
    }

    /// Always true for a constructed system; kept for the classification
    /// record.
    pub fn is_wellformed(&self) -> bool {
        self.blocks.iter().all(|b| b.points().iter().all(|&p| p < self.v))
    }

    pub fn block_size(&self, j: usize) -> Result<usize, IncidenceError> {
        Ok(self.block(j)?.len())
    }

    /// Number of blocks containing `x`.
    pub fn replication_number(&self, x: usize) -> Result<usize, IncidenceError> {
        self.check_point(x)?;
        Ok(self.blocks.iter().filter(|b| b.contains(x)).count())
    }

    /// Number of blocks containing every point of `points` (repeated
    /// blocks counted). The empty set is contained in all `b` blocks.
    pub fn points_index(&self, points: &[usize]) -> Result<usize, IncidenceError> {
        for &x in points {
            self.check_point(x)?;
        }
        Ok(self.blocks.iter().filter(|b| b.is_superset_of(points)).count())
    }

    /// `|B_i ∩ B_j|`; `i == j` gives `|B_i|`.
    pub fn inter_num(&self, i: usize, j: usize) -> Result<usize, IncidenceError> {
        Ok(self.block(i)?.intersection_size(self.block(j)?))
    }

    /// No block occurs twice.
    pub fn is_simple(&self) -> bool {
        let mut sorted: Vec<&Block> = self.blocks.iter().collect();
        sorted.sort_unstable();
        sorted.windows(2).all(|w| w[0] != w[1])
    }

    /// Every block replaced by its complement in `0..v`.
    pub fn complement(&self) -> Self {
        let blocks = self
            .blocks
            .iter()
            .map(|b| Block::from_sorted((0..self.v).filter(|&p| !b.contains(p)).collect()))
            .collect();
        IncidenceSystem { v: self.v, blocks }
    }

    /// Points and blocks swap roles: the dual has `b` points, and its
    /// block `n` lists the indices of the blocks that contain point `n`.
    pub fn dual(&self) -> Self {
        let mut blocks = vec![Vec::new(); self.v];
        for (j, block) in self.blocks.iter().enumerate() {
            for &p in block.points() {
                blocks[p].push(j);
            }
        }
        IncidenceSystem {
            v: self.b(),
            blocks: blocks.into_iter().map(Block::from_sorted).collect(),
        }
    }

    /// Relabels points by `perm` (point `p` becomes `perm[p]`) and
    /// reorders nothing.
    pub fn relabel(&self, perm: &[usize]) -> Result<Self, IncidenceError> {
        if perm.len() != self.v {
            return Err(IncidenceError::IndexOutOfRange { what: "permutation length", index: perm.len(), bound: self.v });
        }
        let mut seen = vec![false; self.v];
        for &p in perm {
            if p >= self.v || std::mem::replace(&mut seen[p], true) {
                return Err(IncidenceError::PointOutOfRange { point: p, v: self.v });
            }
        }
        Ok(IncidenceSystem {
            v: self.v,
            blocks: self.blocks.iter().map(|b| b.map_points(perm)).collect(),
        })
    }

    /// The Fano plane, the (7,3,1) design, with blocks in lexicographic
    /// order.
    pub fn fano_plane() -> Self {
        const LINES: [[usize; 3]; 7] =
            [[0, 1, 2], [0, 3, 4], [0, 5, 6], [1, 3, 5], [1, 4, 6], [2, 3, 6], [2, 4, 5]];
        IncidenceSystem {
            v: 7,
            blocks: LINES.iter().map(|l| Block::from_sorted(l.to_vec())).collect(),
        }
    }

    /// Same system with blocks sorted; the canonical block order.
    pub fn sorted_blocks(&self) -> Self {
        let mut blocks = self.blocks.clone();
        blocks.sort();
        IncidenceSystem { v: self.v, blocks }
    }
}

impl fmt::Display for IncidenceSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.blocks.iter().map(Block::to_string).collect();
        write!(f, "v={} [{}]", self.v, parts.join(" "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fano() -> IncidenceSystem {
        IncidenceSystem::fano_plane()
    }

    #[test]
    fn rejects_out_of_range_and_duplicates() {
        assert_eq!(
            IncidenceSystem::from_lists(2, [vec![0, 2]]),
            Err(IncidenceError::PointOutOfRange { point: 2, v: 2 })
        );
        assert_eq!(Block::new([1, 0, 1]), Err(IncidenceError::DuplicatePoint { point: 1 }));
    }

    #[test]
    fn fano_parameters() {
        let s = fano();
        for j in 0..7 {
            assert_eq!(s.block_size(j).unwrap(), 3);
        }
        for x in 0..7 {
            assert_eq!(s.replication_number(x).unwrap(), 3);
            for y in x + 1..7 {
                assert_eq!(s.points_index(&[x, y]).unwrap(), 1);
            }
        }
        for i in 0..7 {
            for j in 0..7 {
                let expected = if i == j { 3 } else { 1 };
                assert_eq!(s.inter_num(i, j).unwrap(), expected);
            }
        }
    }

    #[test]
    fn repeated_blocks_counted() {
        let s = IncidenceSystem::from_lists(1, [vec![0], vec![0]]).unwrap();
        assert_eq!(s.points_index(&[0]).unwrap(), 2);
        assert!(!s.is_simple());
    }

    #[test]
    fn empty_point_set_index_is_b() {
        assert_eq!(fano().points_index(&[]).unwrap(), 7);
    }

    #[test]
    fn parameter_indices_checked() {
        let s = fano();
        assert!(s.block_size(7).is_err());
        assert!(s.replication_number(7).is_err());
        assert!(s.points_index(&[0, 9]).is_err());
        assert!(s.inter_num(0, 7).is_err());
    }

    #[test]
    fn complement_small() {
        let s = IncidenceSystem::from_lists(3, [vec![0]]).unwrap();
        assert_eq!(s.complement(), IncidenceSystem::from_lists(3, [vec![1, 2]]).unwrap());
        assert_eq!(s.complement().complement(), s);
    }

    #[test]
    fn dual_small() {
        let s = IncidenceSystem::from_lists(2, [vec![0], vec![0, 1]]).unwrap();
        assert_eq!(s.dual(), IncidenceSystem::from_lists(2, [vec![0, 1], vec![1]]).unwrap());
    }

    #[test]
    fn dual_separates_repeated_blocks() {
        let s = IncidenceSystem::from_lists(2, [vec![0, 1], vec![0, 1]]).unwrap();
        let d = s.dual();
        assert_eq!(d.v(), 2);
        assert_eq!(d, IncidenceSystem::from_lists(2, [vec![0, 1], vec![0, 1]]).unwrap());
    }

    #[test]
    fn relabel_validates_permutation() {
        let s = fano();
        assert!(s.relabel(&[0, 1, 2]).is_err());
        assert!(s.relabel(&[0, 0, 1, 2, 3, 4, 5]).is_err());
        let r = s.relabel(&[6, 5, 4, 3, 2, 1, 0]).unwrap();
        assert_eq!(r.block(0).unwrap().points(), &[4, 5, 6]);
    }
}
