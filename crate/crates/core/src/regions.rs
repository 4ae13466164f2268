//! Upward-closed regions of `Z^r`, the frontier search for the minimal
//! degrees where a monotone predicate holds, and the Betti-number bounds
//! for linear truncations and regularity.

use std::collections::{BTreeMap, HashSet};
use std::sync::atomic::{AtomicUsize, Ordering};

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::RegionError;
use crate::ring::Multidegree;
use crate::truncation::{has_linear_truncation, PresentedModule};

/// `⋃ (g + N^r)` over an antichain of generators, or all of `Z^r`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Region {
    r: usize,
    gens: Vec<Multidegree>,
    whole: bool,
}

impl Region {
    pub fn empty(r: usize) -> Self {
        Region {
            r,
            gens: Vec::new(),
            whole: false,
        }
    }

    /// All of `Z^r`: the value of an intersection over nothing.
    pub fn whole(r: usize) -> Self {
        Region {
            r,
            gens: Vec::new(),
            whole: true,
        }
    }

    /// The region generated by `points`, reduced to its minimal elements.
    pub fn generated_by(r: usize, points: &[Multidegree]) -> Self {
        let mut sorted: Vec<&Multidegree> = points.iter().collect();
        sorted.sort();
        sorted.dedup();
        let mut gens: Vec<Multidegree> = Vec::new();
        // a point below `d` is lexicographically smaller, so it is seen first
        for d in sorted {
            if !gens.iter().any(|g| g.leq(d)) {
                gens.push(d.clone());
            }
        }
        Region {
            r,
            gens,
            whole: false,
        }
    }

    pub fn r(&self) -> usize {
        self.r
    }

    /// Minimal elements, sorted lexicographically. Empty for the whole space.
    pub fn gens(&self) -> &[Multidegree] {
        &self.gens
    }

    pub fn is_whole(&self) -> bool {
        self.whole
    }

    pub fn is_empty(&self) -> bool {
        !self.whole && self.gens.is_empty()
    }

    pub fn contains(&self, d: &Multidegree) -> bool {
        self.whole || self.gens.iter().any(|g| g.leq(d))
    }

    /// No generator lies below another.
    pub fn is_antichain(&self) -> bool {
        self.gens.iter().enumerate().all(|(i, a)| {
            self.gens
                .iter()
                .enumerate()
                .all(|(j, b)| i == j || !a.leq(b))
        })
    }
}

/// Serialized as a lexicographically sorted array of integer arrays;
/// the whole space is `null`.
impl Serialize for Region {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        if self.whole {
            s.serialize_none()
        } else {
            self.gens.serialize(s)
        }
    }
}

impl<'de> Deserialize<'de> for Region {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let gens: Option<Vec<Multidegree>> = Option::deserialize(d)?;
        Ok(match gens {
            None => Region::whole(0),
            Some(g) => Region::generated_by(g.first().map_or(0, |x| x.len()), &g),
        })
    }
}

/// The minimal elements of a list of degrees.
pub fn find_mins(ds: &[Multidegree]) -> Region {
    Region::generated_by(ds.first().map_or(0, |d| d.len()), ds)
}

/// Generators: minimal elements of the pairwise joins.
pub fn region_intersect(a: &Region, b: &Region) -> Result<Region, RegionError> {
    if a.r != b.r {
        return Err(RegionError::DimensionMismatch(a.r, b.r));
    }
    if a.whole {
        return Ok(b.clone());
    }
    if b.whole {
        return Ok(a.clone());
    }
    let joins: Vec<Multidegree> = a
        .gens
        .iter()
        .flat_map(|u| b.gens.iter().map(move |v| u.join(v)))
        .collect();
    Ok(Region::generated_by(a.r, &joins))
}

/// The lattice points `lo <= d <= hi`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeBox {
    lo: Multidegree,
    hi: Multidegree,
}

impl DegreeBox {
    pub fn new(lo: Multidegree, hi: Multidegree) -> Result<Self, RegionError> {
        if lo.len() != hi.len() {
            return Err(RegionError::DimensionMismatch(lo.len(), hi.len()));
        }
        if !lo.leq(&hi) {
            return Err(RegionError::EmptyBox {
                lo: lo.coords().to_vec(),
                hi: hi.coords().to_vec(),
            });
        }
        Ok(DegreeBox { lo, hi })
    }

    pub fn lo(&self) -> &Multidegree {
        &self.lo
    }

    pub fn hi(&self) -> &Multidegree {
        &self.hi
    }

    pub fn r(&self) -> usize {
        self.lo.len()
    }

    pub fn contains(&self, d: &Multidegree) -> bool {
        d.len() == self.r() && self.lo.leq(d) && d.leq(&self.hi)
    }

    pub fn size(&self) -> usize {
        self.lo
            .coords()
            .iter()
            .zip(self.hi.coords())
            .map(|(a, b)| (b - a + 1) as usize)
            .product()
    }

    /// Every point, lexicographically.
    pub fn points(&self) -> Vec<Multidegree> {
        let mut out = vec![self.lo.clone()];
        for i in 0..self.r() {
            out = out
                .into_iter()
                .flat_map(|p| {
                    (self.lo.coords()[i]..=self.hi.coords()[i]).map(move |c| {
                        let mut v = p.coords().to_vec();
                        v[i] = c;
                        Multidegree::new(v)
                    })
                })
                .collect();
        }
        out.sort();
        out
    }
}

/// How the frontier search evaluates the predicate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Strategy {
    /// One point at a time, in queue order.
    #[default]
    Sequential,
    /// All queued points of one total degree at once, on the rayon pool.
    /// Output and evaluated points are the same as sequentially.
    #[cfg(feature = "parallel")]
    Parallel,
}

/// Prior knowledge for [`find_region`].
#[derive(Debug, Clone, Default)]
pub struct Seeds {
    /// Points assumed to satisfy the predicate.
    pub inside: Vec<Multidegree>,
    /// Starting queue in place of `{lo}`; points below these are assumed
    /// not to satisfy the predicate.
    pub frontier: Option<Vec<Multidegree>>,
}

#[derive(Debug, Clone)]
pub struct Search {
    pub region: Region,
    /// Number of predicate calls.
    pub evaluations: usize,
}

/// Minimal points of `bx` where the monotone predicate `f` holds.
///
/// Points are popped from the queue in order of total degree, first in
/// first out within a degree. A point already above an accepted point is
/// skipped; otherwise `f` is evaluated, and on failure each successor
/// `d + e_i` inside the box is queued unless it was queued before. Every
/// point is evaluated at most once. For non-monotone `f` the result
/// depends on the traversal.
pub fn find_region<F>(
    bx: &DegreeBox,
    f: F,
    seeds: &Seeds,
    strategy: Strategy,
) -> Result<Search, RegionError>
where
    F: Fn(&Multidegree) -> bool + Sync,
{
    let r = bx.r();
    let frontier = seeds
        .frontier
        .clone()
        .unwrap_or_else(|| vec![bx.lo.clone()]);
    for p in seeds.inside.iter().chain(&frontier) {
        if !bx.contains(p) {
            return Err(RegionError::SeedOutsideBox(p.coords().to_vec()));
        }
    }
    let mut accepted: Vec<Multidegree> = seeds.inside.clone();
    let mut queued: HashSet<Multidegree> = HashSet::new();
    let mut queue: BTreeMap<(i64, u64), Multidegree> = BTreeMap::new();
    let mut seq = 0u64;
    let mut push = |queue: &mut BTreeMap<(i64, u64), Multidegree>,
                    queued: &mut HashSet<Multidegree>,
                    d: Multidegree| {
        if queued.insert(d.clone()) {
            seq += 1;
            queue.insert((d.total(), seq), d);
        }
    };
    for d in frontier {
        push(&mut queue, &mut queued, d);
    }

    let calls = AtomicUsize::new(0);
    let eval = |d: &Multidegree| {
        calls.fetch_add(1, Ordering::Relaxed);
        f(d)
    };

    while let Some((&(level, _), _)) = queue.first_key_value() {
        let batch: Vec<Multidegree> = match strategy {
            Strategy::Sequential => vec![queue.pop_first().unwrap().1],
            #[cfg(feature = "parallel")]
            Strategy::Parallel => {
                let mut b = Vec::new();
                while queue.first_key_value().is_some_and(|(k, _)| k.0 == level) {
                    b.push(queue.pop_first().unwrap().1);
                }
                b
            }
        };
        let _ = level;
        let todo: Vec<Multidegree> = batch
            .into_iter()
            .filter(|d| !accepted.iter().any(|g| g.leq(d)))
            .collect();
        let verdicts: Vec<bool> = match strategy {
            Strategy::Sequential => todo.iter().map(eval).collect(),
            #[cfg(feature = "parallel")]
            Strategy::Parallel => {
                use rayon::prelude::*;
                todo.par_iter().map(eval).collect()
            }
        };
        for (d, ok) in todo.into_iter().zip(verdicts) {
            if ok {
                accepted.push(d);
            } else {
                for i in 0..r {
                    let next = d.plus_unit(i);
                    if next.leq(&bx.hi) {
                        push(&mut queue, &mut queued, next);
                    }
                }
            }
        }
    }
    let evaluations = calls.into_inner();
    debug_assert!(evaluations <= bx.size());
    Ok(Search {
        region: Region::generated_by(r, &accepted),
        evaluations,
    })
}

/// The search box used when none is given: from the componentwise minimum
/// of the generator degrees up to `(reg+1, ..., reg+1)`, raised where
/// needed so the box is not empty.
pub fn default_box(m: &PresentedModule) -> Option<DegreeBox> {
    let reg = m.regularity()?;
    let twists = m.generator_twists();
    let lo = twists[1..]
        .iter()
        .fold(twists[0].clone(), |acc, t| acc.meet(t));
    let hi = Multidegree::constant(lo.len(), reg + 1).join(&lo);
    Some(DegreeBox::new(lo, hi).expect("hi dominates lo"))
}

/// Minimal degrees in the box (default: [`default_box`]) where the
/// truncation of `m` has a linear resolution. Empty for the zero module.
pub fn linear_truncations(
    m: &PresentedModule,
    bx: Option<&DegreeBox>,
) -> Result<Region, RegionError> {
    Ok(linear_truncations_search(m, bx, &Seeds::default(), Strategy::default())?.region)
}

pub fn linear_truncations_search(
    m: &PresentedModule,
    bx: Option<&DegreeBox>,
    seeds: &Seeds,
    strategy: Strategy,
) -> Result<Search, RegionError> {
    let r = m.ring().r();
    let bx = match bx {
        Some(b) => b.clone(),
        None => match default_box(m) {
            Some(b) => b,
            None => {
                return Ok(Search {
                    region: Region::empty(r),
                    evaluations: 0,
                })
            }
        },
    };
    if bx.r() != r {
        return Err(RegionError::DimensionMismatch(bx.r(), r));
    }
    let f = |d: &Multidegree| has_linear_truncation(m, d).expect("degree length checked");
    find_region(&bx, f, seeds, strategy)
}

/// All `λ` in `N^r` with `Σ λ_j = s`, in colex order.
pub fn compositions(r: usize, s: i64) -> Vec<Vec<i64>> {
    if s < 0 || r == 0 {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut cur = vec![0i64; r];
    fn rec(pos: usize, left: i64, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if pos == 0 {
            cur[0] = left;
            out.push(cur.clone());
            return;
        }
        for v in 0..=left {
            cur[pos] = v;
            rec(pos - 1, left - v, cur, out);
        }
    }
    rec(r - 1, s, &mut cur, &mut out);
    out
}

/// `⋂_{(i,b)} ⋃_{Σλ = i - shift} (b - offset - λ + N^r)` over the Betti
/// support with `i >= min_index`.
fn betti_bound(m: &PresentedModule, shift: i64, offset: i64, min_index: usize) -> Region {
    let r = m.ring().r();
    let mut acc = Region::whole(r);
    for (i, b, _) in m.betti().entries() {
        if i < min_index {
            continue;
        }
        let base: Vec<i64> = b.coords().iter().map(|c| c - offset).collect();
        let pts: Vec<Multidegree> = compositions(r, i as i64 - shift)
            .into_iter()
            .map(|l| Multidegree::new(base.iter().zip(&l).map(|(c, x)| c - x).collect()))
            .collect();
        acc = region_intersect(&acc, &Region::generated_by(r, &pts)).expect("same r");
    }
    acc
}

/// A subset of the linear truncation region computed from Betti numbers
/// alone: over all `Tor_i(M)_b != 0`, intersect the unions of
/// `b - λ + N^r` with `Σ λ_j = i`.
pub fn linear_truncations_bound(m: &PresentedModule) -> Region {
    betti_bound(m, 0, 0, 0)
}

/// The same construction with `Σ λ_j = i - 1` and `b - (1,...,1)`, over
/// `i >= 1` only; without such terms it is the whole space.
pub fn regularity_bound(m: &PresentedModule) -> Region {
    betti_bound(m, 1, 1, 1)
}

/// For `r = 2`: `d >= partial regularities` and `d̄ >= regularity`, a
/// sufficient condition for `d` to be a linear truncation.
pub fn bigraded_sufficiency(m: &PresentedModule, d: &Multidegree) -> Result<bool, RegionError> {
    let r = m.ring().r();
    if r != 2 {
        return Err(RegionError::NotBigraded(r));
    }
    if d.len() != 2 {
        return Err(RegionError::DimensionMismatch(d.len(), 2));
    }
    let b = m.betti();
    Ok(match (b.partial_regularities(), b.total_regularity()) {
        (Some(p), Some(reg)) => p.leq(d) && d.total() >= reg,
        _ => true,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn md(v: &[i64]) -> Multidegree {
        Multidegree::new(v.to_vec())
    }

    fn mds(vs: &[&[i64]]) -> Vec<Multidegree> {
        vs.iter().map(|v| md(v)).collect()
    }

    #[test]
    fn minimal_elements() {
        assert_eq!(
            find_mins(&mds(&[&[1, 1], &[2, 1], &[1, 2]])).gens(),
            &mds(&[&[1, 1]])[..]
        );
        assert_eq!(
            find_mins(&mds(&[&[0, 2], &[1, 1], &[2, 0], &[1, 2]])).gens(),
            &mds(&[&[0, 2], &[1, 1], &[2, 0]])[..]
        );
        assert_eq!(
            find_mins(&mds(&[&[-1, 3], &[-1, 3], &[0, 3]])).gens(),
            &mds(&[&[-1, 3]])[..]
        );
        assert!(find_mins(&[]).is_empty());
    }

    #[test]
    fn intersections() {
        let a = find_mins(&mds(&[&[1, 0]]));
        let b = find_mins(&mds(&[&[0, 1]]));
        assert_eq!(
            region_intersect(&a, &b).unwrap().gens(),
            &mds(&[&[1, 1]])[..]
        );
        assert_eq!(region_intersect(&a, &a).unwrap(), a);
        assert_eq!(region_intersect(&Region::whole(2), &a).unwrap(), a);
        assert!(region_intersect(&a, &find_mins(&mds(&[&[0, 1, 2]]))).is_err());
    }

    #[test]
    fn constant_predicates() {
        let bx = DegreeBox::new(md(&[0, 0]), md(&[3, 3])).unwrap();
        let s = find_region(&bx, |_| true, &Seeds::default(), Strategy::Sequential).unwrap();
        assert_eq!(s.region.gens(), &[md(&[0, 0])]);
        assert_eq!(s.evaluations, 1);
        let s = find_region(&bx, |_| false, &Seeds::default(), Strategy::Sequential).unwrap();
        assert!(s.region.is_empty());
        assert_eq!(s.evaluations, 16);
    }

    #[test]
    fn weighted_threshold() {
        let bx = DegreeBox::new(md(&[0, 0]), md(&[5, 5])).unwrap();
        let f = |d: &Multidegree| d.coords()[0] + 2 * d.coords()[1] >= 4;
        let s = find_region(&bx, f, &Seeds::default(), Strategy::Sequential).unwrap();
        assert_eq!(s.region.gens(), &mds(&[&[0, 2], &[2, 1], &[4, 0]])[..]);
    }

    #[test]
    fn seeds_outside_the_box_are_rejected() {
        let bx = DegreeBox::new(md(&[0, 0]), md(&[2, 2])).unwrap();
        let seeds = Seeds {
            inside: mds(&[&[3, 0]]),
            frontier: None,
        };
        assert!(matches!(
            find_region(&bx, |_| true, &seeds, Strategy::Sequential),
            Err(RegionError::SeedOutsideBox(_))
        ));
        assert!(DegreeBox::new(md(&[1, 0]), md(&[0, 0])).is_err());
    }

    #[test]
    fn composition_enumeration() {
        assert_eq!(compositions(2, 2), vec![vec![2, 0], vec![1, 1], vec![0, 2]]);
        assert_eq!(compositions(3, 0), vec![vec![0, 0, 0]]);
        assert!(compositions(2, -1).is_empty());
        assert_eq!(compositions(3, 3).len(), 10);
    }

    #[test]
    fn box_points() {
        let bx = DegreeBox::new(md(&[0, -1]), md(&[1, 1])).unwrap();
        assert_eq!(bx.size(), 6);
        assert_eq!(bx.points().len(), 6);
        assert_eq!(bx.points()[0], md(&[0, -1]));
    }

    #[test]
    fn three_generator_module_regions() {
        let m = crate::demos::bigraded_three_generator();
        let lt = linear_truncations(&m, None).unwrap();
        assert_eq!(lt.gens(), &mds(&[&[0, 2], &[1, 1]])[..]);
        assert_eq!(linear_truncations_bound(&m).gens(), &mds(&[&[1, 1]])[..]);
        assert_eq!(regularity_bound(&m).gens(), &mds(&[&[0, 0]])[..]);
        assert!(bigraded_sufficiency(&m, &md(&[1, 1])).unwrap());
        assert!(!bigraded_sufficiency(&m, &md(&[0, 1])).unwrap());
    }

    #[cfg(feature = "parallel")]
    #[test]
    fn strategies_agree() {
        let m = crate::demos::bigraded_three_generator();
        let bx = DegreeBox::new(md(&[0, 0]), md(&[3, 3])).unwrap();
        let a = linear_truncations_search(&m, Some(&bx), &Seeds::default(), Strategy::Sequential)
            .unwrap();
        let b = linear_truncations_search(&m, Some(&bx), &Seeds::default(), Strategy::Parallel)
            .unwrap();
        assert_eq!(a.region, b.region);
        assert_eq!(a.evaluations, b.evaluations);
    }
}
