use serde::Serialize;

use super::IncidenceSystem;

/// Pairwise intersection behaviour of the block list.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case", tag = "kind", content = "k")]
pub enum Intersection {
    /// Fewer than two blocks: the property is vacuous.
    Undetermined,
    Constant(usize),
    Varying,
}

impl Intersection {
    pub fn constant(self) -> Option<usize> {
        match self {
            Intersection::Constant(k) => Some(k),
            _ => None,
        }
    }
}

/// Everything [`IncidenceSystem::classify`] determines by exhaustive
/// checking.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DesignClass {
    pub v: usize,
    pub b: usize,
    pub is_wellformed: bool,
    /// No empty blocks.
    pub is_design: bool,
    pub is_simple: bool,
    pub uniform_k: Option<usize>,
    pub regular_r: Option<usize>,
    /// Constant index `λ >= 1` over all point pairs; needs `v >= 2`.
    pub pbd_lambda: Option<usize>,
    pub const_intersect: Intersection,
    /// Every block is a proper subset of the points.
    pub is_incomplete: bool,
    pub is_bibd: bool,
}

fn constant<I: IntoIterator<Item = usize>>(values: I) -> Option<usize> {
    let mut it = values.into_iter();
    let first = it.next()?;
    it.all(|x| x == first).then_some(first)
}

impl IncidenceSystem {
    pub fn classify(&self) -> DesignClass {
        let v = self.v();
        let b = self.b();
        let blocks = self.blocks();

        let uniform_k = constant(blocks.iter().map(|blk| blk.len()));
        let mut replication = vec![0usize; v];
        for blk in blocks {
            for &p in blk.points() {
                replication[p] += 1;
            }
        }
        let regular_r = constant(replication);

        let pbd_lambda = if v >= 2 {
            let pairs = (0..v).flat_map(|x| (x + 1..v).map(move |y| (x, y)));
            constant(pairs.map(|(x, y)| blocks.iter().filter(|blk| blk.contains(x) && blk.contains(y)).count()))
                .filter(|&lambda| lambda >= 1)
        } else {
            None
        };

        let const_intersect = if b < 2 {
            Intersection::Undetermined
        } else {
            let pairs = (0..b).flat_map(|i| (i + 1..b).map(move |j| (i, j)));
            match constant(pairs.map(|(i, j)| blocks[i].intersection_size(&blocks[j]))) {
                Some(k) => Intersection::Constant(k),
                None => Intersection::Varying,
            }
        };

        let is_incomplete = blocks.iter().all(|blk| blk.len() < v);
        let is_bibd = matches!(uniform_k, Some(k) if k >= 2 && k < v) && pbd_lambda.is_some();

        DesignClass {
            v,
            b,
            is_wellformed: self.is_wellformed(),
            is_design: blocks.iter().all(|blk| !blk.is_empty()),
            is_simple: self.is_simple(),
            uniform_k,
            regular_r,
            pbd_lambda,
            const_intersect,
            is_incomplete,
            is_bibd,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fano_is_a_bibd() {
        let c = IncidenceSystem::fano_plane().classify();
        assert!(c.is_bibd && c.is_simple && c.is_incomplete && c.is_design);
        assert_eq!(c.uniform_k, Some(3));
        assert_eq!(c.regular_r, Some(3));
        assert_eq!(c.pbd_lambda, Some(1));
        assert_eq!(c.const_intersect, Intersection::Constant(1));
    }

    #[test]
    fn sunflower_is_constant_intersect_but_not_pbd() {
        let s = IncidenceSystem::from_lists(4, [vec![0, 1], vec![0, 2], vec![0, 3]]).unwrap();
        let c = s.classify();
        assert_eq!(c.const_intersect, Intersection::Constant(1));
        assert_eq!(c.pbd_lambda, None);
        assert!(!c.is_bibd);
        assert_eq!(c.regular_r, None);
        assert_eq!(c.uniform_k, Some(2));
    }

    #[test]
    fn single_block_is_undetermined() {
        let s = IncidenceSystem::from_lists(3, [vec![0, 1]]).unwrap();
        assert_eq!(s.classify().const_intersect, Intersection::Undetermined);
    }

    #[test]
    fn complete_block_is_not_incomplete() {
        let s = IncidenceSystem::from_lists(3, [vec![0, 1, 2]]).unwrap();
        let c = s.classify();
        assert!(!c.is_incomplete);
        assert_eq!(c.pbd_lambda, Some(1));
        assert!(!c.is_bibd);
    }

    #[test]
    fn zero_pair_index_is_not_pbd() {
        let s = IncidenceSystem::from_lists(3, [vec![0], vec![1], vec![2]]).unwrap();
        let c = s.classify();
        assert_eq!(c.pbd_lambda, None);
        assert_eq!(c.regular_r, Some(1));
        assert_eq!(c.const_intersect, Intersection::Constant(0));
    }

    #[test]
    fn empty_blocks_flag_design() {
        let s = IncidenceSystem::from_lists(2, [vec![], vec![0]]).unwrap();
        assert!(!s.classify().is_design);
    }

    #[test]
    fn complement_of_fano_is_7_4_2() {
        let c = IncidenceSystem::fano_plane().complement().classify();
        assert!(c.is_bibd);
        assert_eq!((c.uniform_k, c.pbd_lambda, c.regular_r), (Some(4), Some(2), Some(4)));
    }
}
