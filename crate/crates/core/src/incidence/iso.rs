use itertools::Itertools;

use super::{Block, IncidenceSystem};

fn size_profile(s: &IncidenceSystem) -> Vec<usize> {
    s.blocks().iter().map(Block::len).sorted_unstable().collect()
}

fn replication_profile(s: &IncidenceSystem) -> Vec<usize> {
    let mut r = vec![0usize; s.v()];
    for blk in s.blocks() {
        for &p in blk.points() {
            r[p] += 1;
        }
    }
    r.sort_unstable();
    r
}

/// True iff some relabeling of the points of `a` together with some
/// reordering of its blocks yields `b`.
///
/// Brute force over all `v!` point permutations, so only meant for
/// `v <= 8` or so. Cheap invariants are compared first.
pub fn are_isomorphic(a: &IncidenceSystem, b: &IncidenceSystem) -> bool {
    if a.v() != b.v() || a.b() != b.b() {
        return false;
    }
    if size_profile(a) != size_profile(b) || replication_profile(a) != replication_profile(b) {
        return false;
    }
    let target: Vec<Block> = b.blocks().iter().cloned().sorted().collect();
    (0..a.v()).permutations(a.v()).any(|perm| {
        let mut mapped: Vec<Block> = a.blocks().iter().map(|blk| blk.map_points(&perm)).collect();
        mapped.sort();
        mapped == target
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn relabeled_fano_is_isomorphic() {
        let f = IncidenceSystem::fano_plane();
        let r = f.relabel(&[3, 1, 6, 0, 2, 5, 4]).unwrap();
        assert!(are_isomorphic(&f, &r));
        assert!(are_isomorphic(&r, &f));
    }

    #[test]
    fn altered_fano_is_not_isomorphic() {
        let mut lists: Vec<Vec<usize>> =
            IncidenceSystem::fano_plane().blocks().iter().map(|b| b.points().to_vec()).collect();
        lists[6] = vec![2, 4, 6];
        let altered = IncidenceSystem::from_lists(7, lists).unwrap();
        assert!(!are_isomorphic(&IncidenceSystem::fano_plane(), &altered));
    }

    #[test]
    fn different_sizes_are_not_isomorphic() {
        let a = IncidenceSystem::from_lists(3, [vec![0]]).unwrap();
        let b = IncidenceSystem::from_lists(4, [vec![0]]).unwrap();
        let c = IncidenceSystem::from_lists(3, [vec![0], vec![1]]).unwrap();
        assert!(!are_isomorphic(&a, &b));
        assert!(!are_isomorphic(&a, &c));
    }

    #[test]
    fn block_order_is_irrelevant() {
        let a = IncidenceSystem::from_lists(3, [vec![0, 1], vec![2]]).unwrap();
        let b = IncidenceSystem::from_lists(3, [vec![0], vec![1, 2]]).unwrap();
        assert!(are_isomorphic(&a, &b));
    }

    #[test]
    fn empty_systems() {
        let a = IncidenceSystem::new(0, vec![]).unwrap();
        assert!(are_isomorphic(&a, &a));
    }
}
