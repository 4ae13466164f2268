//! Degree-by-degree Buchberger algorithm for homogeneous submodules of a
//! free module, in the term-over-position order, with optional cofactor
//! tracking.
//!
//! Input generators and S-pairs share one queue ordered by total degree.
//! Within a degree, pairs run before generators and both run in insertion
//! order, so a generator is kept exactly when it is not in the span of the
//! lower-degree part and the generators kept before it. With tracking on,
//! every reduction to zero yields a syzygy on the input generators.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use super::module::{top_cmp, FreeVector, Term};
use crate::field::{Coeff, Field};
use crate::ring::Monomial;

/// Positions below the elimination boundary form a block that dominates
/// every other term; within a block the order is term-over-position.
#[derive(Clone, Copy, PartialEq, Eq)]
pub(crate) struct TopKey {
    high: bool,
    mono: Monomial,
    idx: u32,
}

impl Ord for TopKey {
    #[inline]
    fn cmp(&self, other: &Self) -> Ordering {
        self.high
            .cmp(&other.high)
            .then_with(|| top_cmp(&self.mono, self.idx, &other.mono, other.idx))
    }
}

impl PartialOrd for TopKey {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A vector under construction, keyed by term-over-position.
#[derive(Default)]
pub(crate) struct Work {
    map: BTreeMap<TopKey, Term>,
    elim: u32,
}

impl Work {
    pub(crate) fn new(elim: u32) -> Work {
        Work {
            map: BTreeMap::new(),
            elim,
        }
    }

    pub(crate) fn from_terms(terms: &[Term]) -> Work {
        Self::from_terms_elim(terms, 0)
    }

    pub(crate) fn from_terms_elim(terms: &[Term], elim: u32) -> Work {
        let mut w = Work::new(elim);
        for t in terms {
            w.map.insert(w.key(t.mono, t.idx), *t);
        }
        w
    }

    #[inline]
    fn key(&self, mono: Monomial, idx: u32) -> TopKey {
        TopKey {
            high: idx < self.elim,
            mono,
            idx,
        }
    }

    /// Adds `c * m * t` for every term `t` in `terms`.
    #[inline]
    pub(crate) fn add_scaled(&mut self, field: Field, terms: &[Term], c: Coeff, m: &Monomial) {
        for t in terms {
            let mono = t.mono.mul(m);
            let key = self.key(mono, t.idx);
            let add = field.mul(t.coeff, c);
            match self.map.entry(key) {
                std::collections::btree_map::Entry::Occupied(mut e) => {
                    let s = field.add(e.get().coeff, add);
                    if s == 0 {
                        e.remove();
                    } else {
                        e.get_mut().coeff = s;
                    }
                }
                std::collections::btree_map::Entry::Vacant(e) => {
                    if add != 0 {
                        e.insert(Term {
                            mono,
                            idx: t.idx,
                            coeff: add,
                        });
                    }
                }
            }
        }
    }

    #[inline]
    pub(crate) fn pop_max(&mut self) -> Option<Term> {
        self.map.pop_last().map(|(_, t)| t)
    }

    /// Remaining terms in decreasing order.
    pub(crate) fn into_sorted(self) -> Vec<Term> {
        self.map.into_values().rev().collect()
    }
}

pub(crate) struct Elem {
    /// Monic, sorted decreasingly.
    pub vec: Vec<Term>,
    pub mask: u32,
    /// Expression of `vec` in the input generators (tracking only).
    pub cof: Vec<Term>,
}

impl Elem {
    #[inline]
    pub fn lead(&self) -> &Term {
        &self.vec[0]
    }
}

struct Pair {
    j: usize,
    l: usize,
    lcm: Monomial,
    alive: bool,
}

enum Item {
    Gen(usize),
    Pair(usize),
}

pub(crate) struct Engine<'a> {
    field: Field,
    /// Total degree of each basis generator of the ambient module.
    twist_tot: &'a [i64],
    track: bool,
    elim: u32,
    product_criterion: bool,
    pub elems: Vec<Elem>,
    by_pos: Vec<Vec<usize>>,
    pairs: Vec<Pair>,
    pairs_by_pos: Vec<Vec<usize>>,
    queue: BTreeMap<(i64, u8, u64), Item>,
    seq: u64,
    /// Per input generator: did it contribute a new basis element?
    pub kept: Vec<bool>,
    /// Syzygies on the input generators (tracking only), sorted TOP.
    pub syzygies: Vec<FreeVector>,
    pub pairs_reduced: usize,
}

impl<'a> Engine<'a> {
    /// `track` records cofactors and syzygies; the product criterion is only
    /// valid for ideals without tracking and is enabled automatically then.
    pub fn new(field: Field, twist_tot: &'a [i64], track: bool) -> Self {
        let rank = twist_tot.len();
        Engine {
            field,
            twist_tot,
            track,
            elim: 0,
            product_criterion: rank == 1 && !track,
            elems: Vec::new(),
            by_pos: vec![Vec::new(); rank],
            pairs: Vec::new(),
            pairs_by_pos: vec![Vec::new(); rank],
            queue: BTreeMap::new(),
            seq: 0,
            kept: Vec::new(),
            syzygies: Vec::new(),
            pairs_reduced: 0,
        }
    }

    /// Makes positions `0..elim` dominate all others, so that the basis
    /// elements with lead position `>= elim` form a Gröbner basis of the
    /// intersection with the span of those positions.
    pub fn with_elimination(mut self, elim: usize) -> Self {
        self.elim = elim as u32;
        self.product_criterion = false;
        self
    }

    fn push(&mut self, deg: i64, kind: u8, item: Item) {
        self.seq += 1;
        self.queue.insert((deg, kind, self.seq), item);
    }

    /// Runs the algorithm on `gens`.
    pub fn run(&mut self, gens: &[FreeVector]) {
        self.kept = vec![false; gens.len()];
        for (k, g) in gens.iter().enumerate() {
            match g.lead() {
                None => {
                    if self.track {
                        self.syzygies
                            .push(FreeVector::basis_term(k, Monomial::ONE, 1));
                    }
                }
                Some(t) => {
                    let deg = t.mono.total_degree() as i64 + self.twist_tot[t.idx as usize];
                    self.push(deg, 1, Item::Gen(k));
                }
            }
        }
        while let Some((_, item)) = self.queue.pop_first() {
            match item {
                Item::Gen(k) => {
                    let work = Work::from_terms_elim(gens[k].terms(), self.elim);
                    let cof = if self.track {
                        Work::from_terms(&[Term {
                            mono: Monomial::ONE,
                            idx: k as u32,
                            coeff: 1,
                        }])
                    } else {
                        Work::default()
                    };
                    if self.reduce_and_insert(work, cof) {
                        self.kept[k] = true;
                    }
                }
                Item::Pair(p) => {
                    if !self.pairs[p].alive {
                        continue;
                    }
                    self.pairs_reduced += 1;
                    let (work, cof) = self.s_vector(p);
                    self.reduce_and_insert(work, cof);
                }
            }
        }
    }

    fn s_vector(&self, p: usize) -> (Work, Work) {
        let Pair { j, l, lcm, .. } = self.pairs[p];
        let (gj, gl) = (&self.elems[j], &self.elems[l]);
        let qj = gj.lead().mono.quotient_of(&lcm);
        let ql = gl.lead().mono.quotient_of(&lcm);
        let minus_one = self.field.neg(1);
        let mut work = Work::new(self.elim);
        work.add_scaled(self.field, &gj.vec[1..], 1, &qj);
        work.add_scaled(self.field, &gl.vec[1..], minus_one, &ql);
        let mut cof = Work::default();
        if self.track {
            cof.add_scaled(self.field, &gj.cof, 1, &qj);
            cof.add_scaled(self.field, &gl.cof, minus_one, &ql);
        }
        (work, cof)
    }

    #[inline]
    fn find_reducer(&self, t: &Term) -> Option<usize> {
        let mask = t.mono.support_mask();
        self.by_pos[t.idx as usize].iter().copied().find(|&e| {
            let g = &self.elems[e];
            g.mask & !mask == 0 && g.lead().mono.divides(&t.mono)
        })
    }

    /// Fully reduces `work` by the current basis, tracking quotients in `cof`.
    /// Returns the remainder, sorted decreasingly.
    pub fn reduce(&self, mut work: Work, cof: &mut Work) -> Vec<Term> {
        let mut rem = Vec::new();
        while let Some(t) = work.pop_max() {
            match self.find_reducer(&t) {
                Some(e) => {
                    let g = &self.elems[e];
                    let q = g.lead().mono.quotient_of(&t.mono);
                    let c = self.field.neg(t.coeff);
                    work.add_scaled(self.field, &g.vec[1..], c, &q);
                    if self.track {
                        cof.add_scaled(self.field, &g.cof, c, &q);
                    }
                }
                None => rem.push(t),
            }
        }
        rem
    }

    /// Returns whether a new basis element was created.
    fn reduce_and_insert(&mut self, work: Work, mut cof: Work) -> bool {
        let mut rem = self.reduce(work, &mut cof);
        if rem.is_empty() {
            if self.track {
                self.syzygies
                    .push(FreeVector::from_sorted(cof.into_sorted()));
            }
            return false;
        }
        let mut cof = if self.track {
            cof.into_sorted()
        } else {
            Vec::new()
        };
        let lc = rem[0].coeff;
        if lc != 1 {
            let inv = self.field.inv(lc);
            for t in rem.iter_mut().chain(cof.iter_mut()) {
                t.coeff = self.field.mul(t.coeff, inv);
            }
        }
        let lead = rem[0];
        let elem = Elem {
            vec: rem,
            mask: lead.mono.support_mask(),
            cof,
        };
        self.insert(elem);
        true
    }

    /// Gebauer–Möller pair update, then registers the element.
    fn insert(&mut self, elem: Elem) {
        let t = self.elems.len();
        let lead = *elem.lead();
        let pos = lead.idx as usize;
        let m_t = lead.mono;

        // candidate pairs with every earlier element sharing the position
        let cands: Vec<(usize, Monomial, bool)> = self.by_pos[pos]
            .iter()
            .map(|&j| {
                let m_j = self.elems[j].lead().mono;
                (
                    j,
                    m_j.lcm(&m_t),
                    self.product_criterion && m_j.is_coprime(&m_t),
                )
            })
            .collect();
        // criterion M/F: keep (j,t) unless another candidate's lcm divides it
        let mut keep = vec![false; cands.len()];
        for a in 0..cands.len() {
            let (_, lcm_a, coprime_a) = cands[a];
            let dominated = (a + 1..cands.len()).any(|b| cands[b].1.divides(&lcm_a))
                || (0..a).any(|b| keep[b] && cands[b].1.divides(&lcm_a));
            keep[a] = coprime_a || !dominated;
        }

        // criterion B on old pairs at this position
        for &p in &self.pairs_by_pos[pos] {
            let pr = &self.pairs[p];
            if !pr.alive || !m_t.divides(&pr.lcm) {
                continue;
            }
            let mj = self.elems[pr.j].lead().mono;
            let ml = self.elems[pr.l].lead().mono;
            if mj.lcm(&m_t) != pr.lcm && ml.lcm(&m_t) != pr.lcm {
                self.pairs[p].alive = false;
            }
        }
        self.pairs_by_pos[pos].retain(|&p| self.pairs[p].alive);

        self.elems.push(elem);
        self.by_pos[pos].push(t);

        for (a, (j, lcm, coprime)) in cands.into_iter().enumerate() {
            if !keep[a] || coprime {
                continue;
            }
            let id = self.pairs.len();
            self.pairs.push(Pair {
                j,
                l: t,
                lcm,
                alive: true,
            });
            self.pairs_by_pos[pos].push(id);
            let deg = lcm.total_degree() as i64 + self.twist_tot[pos];
            self.push(deg, 0, Item::Pair(id));
        }
    }

    /// Tail-reduces every element against the others, giving the reduced
    /// basis (monic, sorted by insertion).
    pub fn reduced_basis(&self) -> Vec<FreeVector> {
        (0..self.elems.len())
            .map(|i| self.reduced_element(i))
            .collect()
    }

    /// The reduced basis elements whose lead position is at least `from`,
    /// shifted down by `from`. With elimination at `from` these generate the
    /// intersection of the submodule with the trailing positions.
    pub fn reduced_tail_block(&self, from: usize) -> Vec<FreeVector> {
        let from = from as u32;
        (0..self.elems.len())
            .filter(|&i| self.elems[i].lead().idx >= from)
            .map(|i| {
                let terms = self
                    .reduced_element(i)
                    .into_terms()
                    .into_iter()
                    .map(|t| Term {
                        idx: t.idx - from,
                        ..t
                    })
                    .collect();
                FreeVector::from_sorted(terms)
            })
            .collect()
    }

    fn reduced_element(&self, i: usize) -> FreeVector {
        let e = &self.elems[i];
        let mut cof = Work::default();
        let tail = Work::from_terms_elim(&e.vec[1..], self.elim);
        let mut terms = vec![*e.lead()];
        terms.extend(self.reduce(tail, &mut cof));
        FreeVector::from_sorted(terms)
    }
}
