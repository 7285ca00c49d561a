//! Lower bounds from products of univariate linear factors.
//!
//! For such a product the multiplicity at a grid point is the sum of the
//! chosen per-coordinate exponents, so the number of points of multiplicity
//! at least `r` depends only on the multiset of exponents in each variable.
//! The search therefore runs over integer partitions instead of compositions.

use std::fmt;

use num_bigint::BigUint;
use rayon::prelude::*;

use crate::bounds::{BoundParams, DEvaluator};

/// Canonical exponent profiles, one per variable, each sorted non-increasing
/// and padded with zeros to the set size.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ProfileAssignment {
    pub profiles: Vec<Vec<u64>>,
}

impl ProfileAssignment {
    /// Sorts and pads each profile; fails if a profile is longer than its set.
    pub fn canonical(mut profiles: Vec<Vec<u64>>, sizes: &[u64]) -> Option<Self> {
        if profiles.len() != sizes.len() {
            return None;
        }
        for (p, &s) in profiles.iter_mut().zip(sizes) {
            if p.len() as u64 > s {
                return None;
            }
            p.sort_unstable_by(|a, b| b.cmp(a));
            p.resize(s as usize, 0);
        }
        Some(Self { profiles })
    }

    pub fn exponents(&self) -> Vec<u64> {
        self.profiles.iter().map(|p| p.iter().sum()).collect()
    }
}

impl fmt::Display for ProfileAssignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .profiles
            .iter()
            .map(|p| format!("({})", p.iter().map(u64::to_string).collect::<Vec<_>>().join(",")))
            .collect();
        f.write_str(&parts.join(" "))
    }
}

/// `hist[c]` = number of entries with `min(entry, r) = c`.
fn capped_histogram(profile: &[u64], r: u64) -> Vec<u64> {
    let mut hist = vec![0; r as usize + 1];
    for &v in profile {
        hist[v.min(r) as usize] += 1;
    }
    hist
}

/// Combines partial sums: `out[min(a + b, r)] += acc[a] * hist[b]`.
fn convolve_capped(acc: &[u64], hist: &[u64]) -> Vec<u64> {
    let r = acc.len() - 1;
    let mut out = vec![0; r + 1];
    for (a, &x) in acc.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (b, &y) in hist.iter().enumerate() {
            out[(a + b).min(r)] += x * y;
        }
    }
    out
}

fn unit_histogram(r: u64) -> Vec<u64> {
    let mut h = vec![0; r as usize + 1];
    h[0] = 1;
    h
}

/// `#{(j_1, ..., j_m) : r_{j_1}^(1) + ... + r_{j_m}^(m) >= r}`.
pub fn count_heavy_points(profiles: &[Vec<u64>], r: u64) -> u64 {
    let acc = profiles
        .iter()
        .fold(unit_histogram(r), |acc, p| convolve_capped(&acc, &capped_histogram(p, r)));
    acc[r as usize]
}

/// Non-increasing sequences of exactly `parts` non-negative integers summing
/// to `n`, in lexicographically increasing order. Empty if `n > 0 = parts`.
pub fn partitions(n: u64, parts: usize) -> Vec<Vec<u64>> {
    fn walk(left: u64, max: u64, slots: usize, cur: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if slots == 0 {
            if left == 0 {
                out.push(cur.clone());
            }
            return;
        }
        // remaining slots can absorb at most slots * max
        if left > max.saturating_mul(slots as u64) {
            return;
        }
        let lowest = left.div_ceil(slots as u64);
        for v in lowest..=max.min(left) {
            cur.push(v);
            walk(left - v, v, slots - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    walk(n, n, parts, &mut Vec::with_capacity(parts), &mut out);
    out
}

struct Candidate {
    count: u64,
    profiles: Vec<Vec<u64>>,
}

impl Candidate {
    /// Larger count wins; ties go to the lexicographically smaller witness.
    fn better(self, other: Self) -> Self {
        match self.count.cmp(&other.count) {
            std::cmp::Ordering::Greater => self,
            std::cmp::Ordering::Less => other,
            std::cmp::Ordering::Equal => {
                if self.profiles <= other.profiles {
                    self
                } else {
                    other
                }
            }
        }
    }
}

/// Best count over all canonical profile assignments with the given
/// exponent sums, plus the lexicographically smallest witness attaining it.
pub fn lower_bound_search(exponents: &[u64], r: u64, sizes: &[u64]) -> (u64, ProfileAssignment) {
    assert_eq!(exponents.len(), sizes.len(), "one set size per exponent");
    assert!(!exponents.is_empty(), "need at least one variable");
    // per variable: (profile, capped histogram)
    let options: Vec<Vec<(Vec<u64>, Vec<u64>)>> = exponents
        .iter()
        .zip(sizes)
        .map(|(&i, &s)| {
            partitions(i, s as usize)
                .into_iter()
                .map(|p| {
                    let h = capped_histogram(&p, r);
                    (p, h)
                })
                .collect()
        })
        .collect();
    if options.iter().any(Vec::is_empty) {
        // only possible for an empty set with a positive exponent
        let profiles = sizes.iter().map(|&s| vec![0; s as usize]).collect();
        return (0, ProfileAssignment { profiles });
    }

    fn dfs(
        options: &[Vec<(Vec<u64>, Vec<u64>)>],
        depth: usize,
        acc: Vec<u64>,
        chosen: &mut Vec<Vec<u64>>,
        best: &mut Option<Candidate>,
    ) {
        if depth == options.len() {
            let cand = Candidate { count: *acc.last().unwrap(), profiles: chosen.clone() };
            *best = Some(match best.take() {
                Some(b) => b.better(cand),
                None => cand,
            });
            return;
        }
        for (p, h) in &options[depth] {
            chosen.push(p.clone());
            dfs(options, depth + 1, convolve_capped(&acc, h), chosen, best);
            chosen.pop();
        }
    }

    let best = options[0]
        .par_iter()
        .map(|(p, h)| {
            let mut best = None;
            let mut chosen = vec![p.clone()];
            dfs(&options, 1, convolve_capped(&unit_histogram(r), h), &mut chosen, &mut best);
            best.expect("every variable has at least one partition")
        })
        .reduce_with(Candidate::better)
        .expect("first variable has at least one partition");
    (best.count, ProfileAssignment { profiles: best.profiles })
}

/// `D(params) - lower_bound_search(params)`; never negative.
pub fn gap(params: &BoundParams, evaluator: &mut DEvaluator) -> BigUint {
    let d = evaluator.d(params);
    let (lower, _) = lower_bound_search(params.exponents(), u64::from(params.multiplicity()), params.sizes());
    let lower = BigUint::from(lower);
    assert!(lower <= d, "lower bound {lower} exceeds D = {d} at {params}");
    d - lower
}

/// Gap matrix indexed `[i2][i1]` for two variables.
pub fn gap_table(
    r: u32,
    sizes: [u64; 2],
    i1_range: std::ops::RangeInclusive<u64>,
    i2_range: std::ops::RangeInclusive<u64>,
) -> Vec<Vec<u64>> {
    let rows: Vec<u64> = i2_range.collect();
    rows.par_iter()
        .map(|&i2| {
            let mut ev = DEvaluator::new();
            i1_range
                .clone()
                .map(|i1| {
                    let params = BoundParams::new(vec![i1, i2], r, sizes.to_vec()).expect("valid sizes");
                    u64::try_from(gap(&params, &mut ev)).expect("gap fits in u64")
                })
                .collect()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn heavy_point_examples() {
        assert_eq!(count_heavy_points(&[vec![2, 2, 2, 2, 0], vec![1, 1, 1, 1, 1]], 3), 20);
        assert_eq!(count_heavy_points(&[vec![4, 1, 0], vec![0, 0, 9, 2]], 0), 12);
        assert_eq!(count_heavy_points(&[vec![0; 5], vec![0; 5]], 1), 0);
    }

    #[test]
    fn heavy_points_match_direct_count() {
        let a = [3u64, 0, 1, 5];
        let b = [2u64, 2, 0];
        let c = [1u64, 4];
        for r in 0..8 {
            let mut direct = 0;
            for x in a {
                for y in b {
                    for z in c {
                        if x + y + z >= r {
                            direct += 1;
                        }
                    }
                }
            }
            assert_eq!(count_heavy_points(&[a.to_vec(), b.to_vec(), c.to_vec()], r), direct);
        }
    }

    #[test]
    fn partition_enumeration() {
        assert_eq!(partitions(0, 3), vec![vec![0, 0, 0]]);
        assert_eq!(partitions(4, 2), vec![vec![2, 2], vec![3, 1], vec![4, 0]]);
        assert!(partitions(3, 0).is_empty());
        // p(12) = 77 partitions with at most 12 parts
        assert_eq!(partitions(12, 12).len(), 77);
        for p in partitions(9, 4) {
            assert_eq!(p.iter().sum::<u64>(), 9);
            assert!(p.windows(2).all(|w| w[0] >= w[1]));
        }
    }

    #[test]
    fn lower_bound_examples() {
        let (count, witness) = lower_bound_search(&[8, 5], 3, &[5, 5]);
        assert_eq!(count, 20);
        assert_eq!(witness.exponents(), vec![8, 5]);
        assert_eq!(count_heavy_points(&witness.profiles, 3), 20);

        assert_eq!(lower_bound_search(&[10, 3], 3, &[5, 5]).0, 17);
        assert_eq!(lower_bound_search(&[0, 0, 0], 2, &[3, 4, 5]).0, 0);
    }

    #[test]
    fn witness_is_smallest_maximizer() {
        let (count, witness) = lower_bound_search(&[4, 3], 2, &[3, 3]);
        let mut maximizers = Vec::new();
        for a in partitions(4, 3) {
            for b in partitions(3, 3) {
                if count_heavy_points(&[a.clone(), b.clone()], 2) == count {
                    maximizers.push(vec![a.clone(), b]);
                }
            }
        }
        assert_eq!(Some(&witness.profiles), maximizers.iter().min());
    }

    #[test]
    fn gap_corner_and_known_cells() {
        let table = gap_table(3, [5, 5], 0..=14, 0..=3);
        assert_eq!(table[0][0], 0);
        assert_eq!(table[3][10], 4);
        assert_eq!(table[1][14], 0);
    }

    #[test]
    fn canonical_assignment() {
        let pa = ProfileAssignment::canonical(vec![vec![1, 3], vec![2]], &[3, 2]).unwrap();
        assert_eq!(pa.profiles, vec![vec![3, 1, 0], vec![2, 0]]);
        assert_eq!(pa.to_string(), "(3,1,0) (2,0)");
        assert!(ProfileAssignment::canonical(vec![vec![1, 1, 1]], &[2]).is_none());
    }
}
