//! Schreyer frames.
//!
//! Level 1 is a Gröbner basis of the relations in the term-over-position
//! order. Each further level is the Gröbner basis of the syzygies of the
//! previous one in the order induced by the previous level: a term `m e_k`
//! compares by `m` times the product of the lead monomials below `e_k`, then
//! by index. Its lead terms are determined before any arithmetic happens, and
//! every element comes from a single reduction to zero.
//!
//! Betti numbers are read from the constant part of the frame: in each
//! multidegree `b`, `β_{i,b} = n_{i,b} - rank D_i(b) - rank D_{i+1}(b)` where
//! `D_i(b)` is the scalar matrix between the degree-`b` generators.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use crate::field::{Coeff, Field};
use crate::groebner::{top_cmp, FreeModule, FreeVector, GradedHom, Term};
use crate::ring::{Monomial, Multidegree, RingSpec};

use super::ChainComplexData;

pub(crate) struct Level {
    pub degs: Vec<Multidegree>,
    /// Product of the lead monomials down to level 0.
    pub totals: Vec<Monomial>,
    /// Images in the previous level, lead term first, decreasing in the
    /// induced order. Empty at level 0.
    pub vecs: Vec<Vec<Term>>,
    masks: Vec<u32>,
}

pub(crate) struct Frame {
    ring: Arc<RingSpec>,
    pub levels: Vec<Level>,
    /// `ranks[i][b]`: rank of the scalar part of the `i`-th differential in
    /// degree `b`; `ranks[0]` is empty.
    ranks: Vec<HashMap<Multidegree, usize>>,
    complete: bool,
}

#[derive(PartialEq, Eq)]
struct Key {
    tot: Monomial,
    idx: u32,
}

impl Ord for Key {
    #[inline]
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        top_cmp(&self.tot, self.idx, &other.tot, other.idx)
    }
}

impl PartialOrd for Key {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

struct Work<'a> {
    map: BTreeMap<Key, Term>,
    totals: &'a [Monomial],
}

impl<'a> Work<'a> {
    fn new(totals: &'a [Monomial]) -> Self {
        Work {
            map: BTreeMap::new(),
            totals,
        }
    }

    fn add_scaled(&mut self, field: Field, terms: &[Term], c: Coeff, m: &Monomial) {
        use std::collections::btree_map::Entry;
        for t in terms {
            let mono = t.mono.mul(m);
            let key = Key {
                tot: mono.mul(&self.totals[t.idx as usize]),
                idx: t.idx,
            };
            let add = field.mul(t.coeff, c);
            match self.map.entry(key) {
                Entry::Occupied(mut e) => {
                    let s = field.add(e.get().coeff, add);
                    if s == 0 {
                        e.remove();
                    } else {
                        e.get_mut().coeff = s;
                    }
                }
                Entry::Vacant(e) => {
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

fn sort_induced(terms: &mut [Term], totals: &[Monomial]) {
    terms.sort_by(|a, b| {
        let ta = a.mono.mul(&totals[a.idx as usize]);
        let tb = b.mono.mul(&totals[b.idx as usize]);
        top_cmp(&tb, b.idx, &ta, a.idx)
    });
}

/// Orders a level by lead position, then lead monomial lex-descending; this
/// keeps index order compatible with the induced order and bounds the
/// length of the frame by the number of variables.
fn level_order(a: &Term, b: &Term) -> std::cmp::Ordering {
    a.idx.cmp(&b.idx).then_with(|| b.mono.lex_cmp(&a.mono))
}

impl Frame {
    /// Starts a frame for `F0 / <gb>`, where `gb` is a reduced Gröbner basis
    /// in the term-over-position order on the free module with `twists`.
    pub fn new(ring: &Arc<RingSpec>, twists: &[Multidegree], gb: &[FreeVector]) -> Frame {
        let level0 = Level {
            degs: twists.to_vec(),
            totals: vec![Monomial::ONE; twists.len()],
            vecs: Vec::new(),
            masks: Vec::new(),
        };
        let mut elems: Vec<Vec<Term>> = gb
            .iter()
            .filter(|g| !g.is_zero())
            .map(|g| g.terms().to_vec())
            .collect();
        elems.sort_by(|a, b| level_order(&a[0], &b[0]));
        let mut frame = Frame {
            ring: ring.clone(),
            levels: vec![level0],
            ranks: vec![HashMap::new()],
            complete: false,
        };
        frame.push_level(elems);
        frame
    }

    fn push_level(&mut self, vecs: Vec<Vec<Term>>) {
        let prev = self.levels.last().unwrap();
        let mut degs = Vec::with_capacity(vecs.len());
        let mut totals = Vec::with_capacity(vecs.len());
        let mut masks = Vec::with_capacity(vecs.len());
        for v in &vecs {
            let lead = &v[0];
            let k = lead.idx as usize;
            degs.push(&self.ring.multidegree(&lead.mono) + &prev.degs[k]);
            totals.push(lead.mono.mul(&prev.totals[k]));
            masks.push(lead.mono.support_mask());
        }
        let level = Level {
            degs,
            totals,
            vecs,
            masks,
        };
        let ranks = scalar_ranks(self.ring.field(), &level);
        if level.vecs.is_empty() {
            self.complete = true;
        }
        self.levels.push(level);
        self.ranks.push(ranks);
    }

    /// Number of levels computed, including level 0.
    pub fn depth(&self) -> usize {
        self.levels.len()
    }

    /// Computes the next level; returns false once the frame is complete.
    pub fn extend(&mut self) -> bool {
        if self.complete {
            return false;
        }
        let i = self.levels.len() - 1;
        let field = self.ring.field();
        let cur = &self.levels[i];
        let lower = &self.levels[i - 1];
        let mut by_pos: Vec<Vec<usize>> = vec![Vec::new(); lower.degs.len()];
        for (j, v) in cur.vecs.iter().enumerate() {
            by_pos[v[0].idx as usize].push(j);
        }

        let mut news: Vec<(usize, usize, Monomial)> = Vec::new();
        for group in &by_pos {
            for (a, &j) in group.iter().enumerate() {
                let mj = cur.vecs[j][0].mono;
                let cands: Vec<(usize, Monomial)> = group[a + 1..]
                    .iter()
                    .map(|&l| (l, mj.quotient_of(&mj.lcm(&cur.vecs[l][0].mono))))
                    .collect();
                for (ci, &(l, q)) in cands.iter().enumerate() {
                    let redundant = cands
                        .iter()
                        .enumerate()
                        .any(|(cj, (_, q2))| cj != ci && q2.divides(&q) && (*q2 != q || cj < ci));
                    if !redundant {
                        news.push((j, l, q));
                    }
                }
            }
        }
        news.sort_by(|a, b| a.0.cmp(&b.0).then_with(|| b.2.lex_cmp(&a.2)));

        let vecs: Vec<Vec<Term>> = news
            .iter()
            .map(|&(j, l, q)| syzygy(field, cur, &lower.totals, &by_pos, j, l, q))
            .collect();
        self.push_level(vecs);
        assert!(
            self.levels.len() <= self.ring.nvars() + 2,
            "frame longer than the number of variables"
        );
        !self.complete
    }

    pub fn run_to_end(&mut self) {
        while self.extend() {}
    }

    /// Betti numbers at level `i`, available once level `i + 1` exists.
    pub fn betti_at(&self, i: usize) -> Option<BTreeMap<Multidegree, usize>> {
        if i + 1 >= self.levels.len() && !(self.complete && i < self.levels.len()) {
            return None;
        }
        let mut counts: BTreeMap<Multidegree, usize> = BTreeMap::new();
        for d in &self.levels[i].degs {
            *counts.entry(d.clone()).or_default() += 1;
        }
        let rank = |lvl: usize, d: &Multidegree| -> usize {
            self.ranks
                .get(lvl)
                .and_then(|r| r.get(d))
                .copied()
                .unwrap_or(0)
        };
        let mut out = BTreeMap::new();
        for (d, n) in counts {
            let b = n - rank(i, &d) - rank(i + 1, &d);
            if b > 0 {
                out.insert(d, b);
            }
        }
        Some(out)
    }

    /// The frame as a (usually non-minimal) free resolution.
    pub fn to_complex(&self) -> ChainComplexData {
        let ring = &self.ring;
        let modules: Vec<FreeModule> = self
            .levels
            .iter()
            .map(|l| FreeModule::new(l.degs.clone()))
            .filter(|m| m.rank() > 0)
            .collect();
        let maps = (1..modules.len())
            .map(|i| {
                let columns = self.levels[i]
                    .vecs
                    .iter()
                    .map(|v| FreeVector::from_terms(ring.field(), v.clone()))
                    .collect();
                GradedHom::new_unchecked(ring, modules[i].clone(), modules[i - 1].clone(), columns)
            })
            .collect();
        ChainComplexData::from_parts(ring, modules, maps)
    }
}

/// The frame element with lead `q e_j` paired with `e_l`: reduces
/// `q v_j - q' v_l` to zero and records the quotients.
fn syzygy(
    field: Field,
    cur: &Level,
    lower_totals: &[Monomial],
    by_pos: &[Vec<usize>],
    j: usize,
    l: usize,
    q: Monomial,
) -> Vec<Term> {
    let (vj, vl) = (&cur.vecs[j], &cur.vecs[l]);
    let lcm = q.mul(&vj[0].mono);
    let ql = vl[0].mono.quotient_of(&lcm);
    let minus_one = field.neg(1);
    let mut work = Work::new(lower_totals);
    work.add_scaled(field, &vj[1..], 1, &q);
    work.add_scaled(field, &vl[1..], minus_one, &ql);
    let mut out = vec![
        Term {
            mono: q,
            idx: j as u32,
            coeff: 1,
        },
        Term {
            mono: ql,
            idx: l as u32,
            coeff: minus_one,
        },
    ];
    while let Some((_, t)) = work.map.pop_last() {
        let mask = t.mono.support_mask();
        let k = by_pos[t.idx as usize]
            .iter()
            .copied()
            .find(|&k| cur.masks[k] & !mask == 0 && cur.vecs[k][0].mono.divides(&t.mono))
            .expect("frame syzygy does not reduce to zero");
        let a = cur.vecs[k][0].mono.quotient_of(&t.mono);
        let c = field.neg(t.coeff);
        work.add_scaled(field, &cur.vecs[k][1..], c, &a);
        out.push(Term {
            mono: a,
            idx: k as u32,
            coeff: c,
        });
    }
    sort_induced(&mut out, &cur.totals);
    debug_assert!(out[0].idx == j as u32 && out[0].mono == q);
    out
}

/// Rank of the scalar part of a level, per multidegree.
fn scalar_ranks(field: Field, level: &Level) -> HashMap<Multidegree, usize> {
    let mut blocks: HashMap<Multidegree, Vec<Vec<(u32, Coeff)>>> = HashMap::new();
    for (s, v) in level.vecs.iter().enumerate() {
        let mut row: Vec<(u32, Coeff)> = v
            .iter()
            .filter(|t| t.mono.is_one())
            .map(|t| (t.idx, t.coeff))
            .collect();
        if !row.is_empty() {
            row.sort_unstable_by_key(|e| e.0);
            blocks.entry(level.degs[s].clone()).or_default().push(row);
        }
    }
    blocks
        .into_iter()
        .map(|(d, rows)| (d, sparse_rank(field, rows)))
        .collect()
}

/// Rank of a sparse matrix over GF(p), rows sorted by column.
pub(crate) fn sparse_rank(field: Field, rows: Vec<Vec<(u32, Coeff)>>) -> usize {
    // pivot column -> monic row starting at that column
    let mut pivots: HashMap<u32, Vec<(u32, Coeff)>> = HashMap::new();
    for row in rows {
        let mut work: BTreeMap<u32, Coeff> = row.into_iter().collect();
        while let Some((&c, &v)) = work.iter().next() {
            match pivots.get(&c) {
                Some(p) => {
                    let f = field.neg(v);
                    for &(pc, pv) in p {
                        let e = work.entry(pc).or_insert(0);
                        *e = field.add(*e, field.mul(f, pv));
                        if *e == 0 {
                            work.remove(&pc);
                        }
                    }
                }
                None => {
                    let inv = field.inv(v);
                    let monic = work
                        .into_iter()
                        .map(|(pc, pv)| (pc, field.mul(pv, inv)))
                        .collect();
                    pivots.insert(c, monic);
                    break;
                }
            }
        }
    }
    pivots.len()
}
