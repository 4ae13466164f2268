use std::collections::BTreeMap;
use std::fmt::Write;

use crate::ring::Multidegree;

/// Multigraded Betti numbers: `(i, b) -> dim Tor_i(M, k)_b`.
///
/// Tables built from a non-minimal complex only bound the true numbers from
/// above; `is_minimal` records which case applies.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BettiTable {
    r: usize,
    entries: BTreeMap<(usize, Multidegree), usize>,
    minimal: bool,
}

impl BettiTable {
    pub fn new(r: usize, minimal: bool) -> Self {
        BettiTable {
            r,
            entries: BTreeMap::new(),
            minimal,
        }
    }

    pub(crate) fn add(&mut self, i: usize, b: Multidegree, n: usize) {
        if n > 0 {
            *self.entries.entry((i, b)).or_default() += n;
        }
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn is_minimal(&self) -> bool {
        self.minimal
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, i: usize, b: &Multidegree) -> usize {
        self.entries.get(&(i, b.clone())).copied().unwrap_or(0)
    }

    /// Nonzero entries in increasing `(i, b)` order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, &Multidegree, usize)> {
        self.entries.iter().map(|((i, b), n)| (*i, b, *n))
    }

    /// One past the largest homological index with a nonzero entry.
    pub fn len(&self) -> usize {
        self.entries.keys().map(|(i, _)| i + 1).max().unwrap_or(0)
    }

    /// Total rank of each step.
    pub fn ranks(&self) -> Vec<usize> {
        let mut out = vec![0; self.len()];
        for (i, _, n) in self.entries() {
            out[i] += n;
        }
        out
    }

    /// Degrees of step `i`, lexicographically decreasing.
    pub fn degrees(&self, i: usize) -> Vec<Multidegree> {
        let mut out: Vec<Multidegree> = self
            .entries()
            .filter(|(j, _, _)| *j == i)
            .map(|(_, b, _)| b.clone())
            .collect();
        out.reverse();
        out
    }

    /// `max (b̄ - i)` over the support; `None` for the zero module.
    pub fn total_regularity(&self) -> Option<i64> {
        self.entries().map(|(i, b, _)| b.total() - i as i64).max()
    }

    /// Coordinatewise `max (b_j - i)` over the support.
    pub fn partial_regularities(&self) -> Option<Multidegree> {
        let mut out: Option<Vec<i64>> = None;
        for (i, b, _) in self.entries() {
            let shifted: Vec<i64> = b.coords().iter().map(|c| c - i as i64).collect();
            out = Some(match out {
                None => shifted,
                Some(acc) => acc.iter().zip(&shifted).map(|(a, s)| *a.max(s)).collect(),
            });
        }
        out.map(Multidegree::new)
    }

    /// Text table: one column per homological index `i`, one row per slope
    /// `b̄ - i`. A cell lists its degrees as monomials in `a, b, c, ...`
    /// (`(1,2)` is `ab^2`) with multiplicities, `.` when empty.
    pub fn render(&self) -> String {
        if self.entries.is_empty() {
            return "0\n".to_string();
        }
        let cols = self.len();
        let mut cells: BTreeMap<i64, Vec<String>> = BTreeMap::new();
        let mut grouped: BTreeMap<(i64, usize), Vec<(&Multidegree, usize)>> = BTreeMap::new();
        for (i, b, n) in self.entries() {
            grouped
                .entry((b.total() - i as i64, i))
                .or_default()
                .push((b, n));
        }
        let (lo, hi) = (
            grouped.keys().map(|k| k.0).min().unwrap(),
            grouped.keys().map(|k| k.0).max().unwrap(),
        );
        for slope in lo..=hi {
            cells.insert(slope, vec![".".to_string(); cols]);
        }
        for ((slope, i), mut degs) in grouped {
            degs.sort_by(|x, y| y.0.cmp(x.0));
            let text: Vec<String> = degs
                .iter()
                .map(|(b, n)| {
                    let m = degree_monomial(b);
                    match (*n, m.as_str()) {
                        (n, "1") => n.to_string(),
                        (1, _) => m,
                        (n, _) => format!("{n}{m}"),
                    }
                })
                .collect();
            cells.get_mut(&slope).unwrap()[i] = text.join("+");
        }
        let label_width = cells.keys().map(|s| format!("{s}:").len()).max().unwrap();
        let widths: Vec<usize> = (0..cols)
            .map(|i| {
                cells
                    .values()
                    .map(|row| row[i].len())
                    .chain(std::iter::once(i.to_string().len()))
                    .max()
                    .unwrap()
            })
            .collect();
        let mut out = String::new();
        write!(out, "{:label_width$}", "").unwrap();
        for (i, w) in widths.iter().enumerate() {
            write!(out, " {:>w$}", i).unwrap();
        }
        out.push('\n');
        for (slope, row) in &cells {
            write!(out, "{:>label_width$}", format!("{slope}:")).unwrap();
            for (cell, w) in row.iter().zip(&widths) {
                write!(out, " {:>w$}", cell).unwrap();
            }
            out.push('\n');
        }
        out
    }
}

fn degree_monomial(b: &Multidegree) -> String {
    let mut s = String::new();
    for (j, &e) in b.coords().iter().enumerate() {
        let var = if j < 26 {
            ((b'a' + j as u8) as char).to_string()
        } else {
            format!("t{j}")
        };
        match e {
            0 => {}
            1 => s.push_str(&var),
            _ => write!(s, "{var}^{e}").unwrap(),
        }
    }
    if s.is_empty() {
        s.push('1');
    }
    s
}
