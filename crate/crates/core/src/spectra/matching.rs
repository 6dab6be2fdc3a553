//! Optimal matching distance between two equal-size point multisets.

use crate::c64;

/// Bottleneck distance: the minimum over bijections of the largest pair distance.
///
/// Returns `f64::INFINITY` when the sizes differ.
pub fn matching_distance(a: &[c64], b: &[c64]) -> f64 {
    if a.len() != b.len() {
        return f64::INFINITY;
    }
    if a.is_empty() {
        return 0.0;
    }
    let dist: Vec<Vec<f64>> = a.iter().map(|x| b.iter().map(|y| (x - y).norm()).collect()).collect();
    let mut candidates: Vec<f64> = dist.iter().flatten().copied().collect();
    candidates.sort_by(f64::total_cmp);
    candidates.dedup();
    // Smallest threshold admitting a perfect matching.
    let (mut lo, mut hi) = (0usize, candidates.len() - 1);
    while lo < hi {
        let mid = (lo + hi) / 2;
        let allowed = |i: usize, j: usize| dist[i][j] <= candidates[mid];
        if perfect_matching(a.len(), b.len(), allowed).is_some() {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    candidates[lo]
}

/// Kuhn's augmenting-path bipartite matching. Returns `left -> right` when
/// every left vertex can be matched.
pub fn perfect_matching(left: usize, right: usize, allowed: impl Fn(usize, usize) -> bool) -> Option<Vec<usize>> {
    fn augment(
        i: usize,
        right: usize,
        allowed: &dyn Fn(usize, usize) -> bool,
        seen: &mut [bool],
        owner: &mut [Option<usize>],
    ) -> bool {
        for j in 0..right {
            if allowed(i, j) && !seen[j] {
                seen[j] = true;
                if owner[j].is_none() || augment(owner[j].unwrap(), right, allowed, seen, owner) {
                    owner[j] = Some(i);
                    return true;
                }
            }
        }
        false
    }

    let mut owner: Vec<Option<usize>> = vec![None; right];
    for i in 0..left {
        let mut seen = vec![false; right];
        if !augment(i, right, &allowed, &mut seen, &mut owner) {
            return None;
        }
    }
    let mut assignment = vec![0; left];
    for (j, o) in owner.iter().enumerate() {
        if let Some(i) = o {
            assignment[*i] = j;
        }
    }
    Some(assignment)
}
