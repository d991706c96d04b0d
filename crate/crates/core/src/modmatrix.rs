//! Attaching-map matrices over chains of cyclic groups.
//!
//! Column `j` of an [`AttachingMatrix`] takes values in `Z/d_j`, with
//! `d_1 | d_2 | ... | d_r`. Only row operations are allowed (adding one row
//! to another, swapping two rows, negating a row); columns live in different
//! direct summands and must never be mixed. Every operation is appended to
//! an operation log so a reduction can be replayed and audited.
//!
//! [`F2Matrix`] is the square bit matrix used for skeleta of
//! `(n-2)`-connected manifolds, where full row *and* column elimination is
//! permitted and only the rank matters.

use std::collections::{HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use num_integer::Integer;

use crate::arith::CyclicElem;
use crate::error::{Error, Result};

/// An elementary row operation. Row indices are 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RowOp {
    /// `row[target] += row[source]`
    Add {
        target: usize,
        source: usize,
    },
    Swap(usize, usize),
    Negate(usize),
}

impl RowOp {
    fn check(&self, rows: usize) -> Result<()> {
        let in_range = |i: usize| (1..=rows).contains(&i);
        let ok = match *self {
            RowOp::Add { target, source } => {
                in_range(target) && in_range(source) && target != source
            }
            RowOp::Swap(a, b) => in_range(a) && in_range(b) && a != b,
            RowOp::Negate(a) => in_range(a),
        };
        if ok {
            Ok(())
        } else {
            Err(Error::invalid(format!(
                "row operation `{self}` is invalid for {rows} rows"
            )))
        }
    }
}

impl fmt::Display for RowOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RowOp::Add { target, source } => write!(f, "add {target} {source}"),
            RowOp::Swap(a, b) => write!(f, "swap {a} {b}"),
            RowOp::Negate(a) => write!(f, "neg {a}"),
        }
    }
}

impl FromStr for RowOp {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let words: Vec<&str> = s.split_whitespace().collect();
        let idx = |w: &str| {
            w.parse::<usize>()
                .map_err(|_| Error::invalid(format!("bad row index `{w}` in `{s}`")))
        };
        match words.as_slice() {
            ["add", a, b] => Ok(RowOp::Add {
                target: idx(a)?,
                source: idx(b)?,
            }),
            ["swap", a, b] => Ok(RowOp::Swap(idx(a)?, idx(b)?)),
            ["neg", a] => Ok(RowOp::Negate(idx(a)?)),
            _ => Err(Error::invalid(format!("unrecognised row operation `{s}`"))),
        }
    }
}

/// Parses a line-based trace as written by [`AttachingMatrix::oplog_text`].
/// Blank lines and `#` comments are skipped.
pub fn parse_oplog(text: &str) -> Result<Vec<RowOp>> {
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(str::parse)
        .collect()
}

/// Matrix of the suspended attaching map, with its certification log.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AttachingMatrix {
    moduli: Vec<u64>,
    initial: Vec<Vec<u64>>,
    entries: Vec<Vec<u64>>,
    oplog: Vec<RowOp>,
}

impl AttachingMatrix {
    /// Builds a matrix from residues. Each entry of column `j` must already
    /// lie in `[0, moduli[j])`.
    pub fn new(moduli: Vec<u64>, rows: Vec<Vec<i64>>) -> Result<Self> {
        if rows.is_empty() {
            return Err(Error::invalid("an attaching matrix needs at least one row"));
        }
        check_moduli_chain(&moduli)?;
        let mut entries = Vec::with_capacity(rows.len());
        for (i, row) in rows.iter().enumerate() {
            if row.len() != moduli.len() {
                return Err(Error::invalid(format!(
                    "row {} has {} entries, expected {}",
                    i + 1,
                    row.len(),
                    moduli.len()
                )));
            }
            let reduced = row
                .iter()
                .zip(&moduli)
                .map(|(&v, &d)| CyclicElem::checked(v, d).map(|e| e.value() as u64))
                .collect::<Result<Vec<_>>>()?;
            entries.push(reduced);
        }
        Ok(AttachingMatrix {
            moduli,
            initial: entries.clone(),
            entries,
            oplog: Vec::new(),
        })
    }

    pub fn zeros(rows: usize, moduli: Vec<u64>) -> Result<Self> {
        let r = moduli.len();
        AttachingMatrix::new(moduli, vec![vec![0; r]; rows])
    }

    pub fn rows(&self) -> usize {
        self.entries.len()
    }

    pub fn cols(&self) -> usize {
        self.moduli.len()
    }

    pub fn moduli(&self) -> &[u64] {
        &self.moduli
    }

    /// Entry at 0-based `(row, col)`.
    pub fn entry(&self, row: usize, col: usize) -> CyclicElem {
        CyclicElem::new(self.entries[row][col] as i64, self.moduli[col])
    }

    pub fn residues(&self) -> &[Vec<u64>] {
        &self.entries
    }

    pub fn initial_residues(&self) -> &[Vec<u64>] {
        &self.initial
    }

    pub fn column(&self, col: usize) -> Vec<CyclicElem> {
        (0..self.rows()).map(|i| self.entry(i, col)).collect()
    }

    pub fn oplog(&self) -> &[RowOp] {
        &self.oplog
    }

    pub fn oplog_text(&self) -> String {
        self.oplog.iter().map(|op| format!("{op}\n")).collect()
    }

    /// Returns a copy with `op` applied and logged.
    pub fn apply_rowop(&self, op: RowOp) -> Result<AttachingMatrix> {
        let mut out = self.clone();
        out.apply_in_place(op)?;
        Ok(out)
    }

    fn apply_in_place(&mut self, op: RowOp) -> Result<()> {
        op.check(self.rows())?;
        apply_to(&mut self.entries, &self.moduli, op);
        self.oplog.push(op);
        Ok(())
    }

    /// Replays the log from the recorded initial residues.
    pub fn replay(&self) -> Result<Vec<Vec<u64>>> {
        let mut state = self.initial.clone();
        for &op in &self.oplog {
            op.check(self.rows())?;
            apply_to(&mut state, &self.moduli, op);
        }
        Ok(state)
    }

    pub fn log_certifies(&self) -> bool {
        self.replay().map(|s| s == self.entries).unwrap_or(false)
    }

    /// Upper-triangular form reachable by row operations only.
    ///
    /// Columns are processed left to right with the pivot of column `j` on
    /// row `j`; settled pivots are never revisited. For each column the
    /// entries on rows `j..m` are combined by an integer Euclidean algorithm
    /// on their representatives in `[0, d_j)`. When another free row is
    /// available its zero residue is lifted to `d_j` so that the pivot ends
    /// up as the least positive generator `gcd(entries, d_j)` of the
    /// subgroup they span. A pivot with no free row below it can only be
    /// negated; the smaller of `v` and `d - v` is kept.
    pub fn reduce_restricted(&self) -> AttachingMatrix {
        let mut out = self.clone();
        let m = out.rows();
        for col in 0..out.cols().min(m) {
            out.reduce_column(col, col);
        }
        debug_assert!(out.log_certifies());
        out
    }

    fn reduce_column(&mut self, col: usize, pivot: usize) {
        let d = self.moduli[col];
        let m = self.rows();
        let Some(mut best) = self.euclid(col, pivot) else {
            return;
        };
        let v = self.entries[best][col];
        if v.gcd(&d) != v && m - pivot >= 2 {
            // lift a zero row to d and keep going: gcd(v, d) is reachable
            let spare = (pivot..m).find(|&i| i != best).expect("two free rows");
            let q = d / v;
            self.subtract_multiple(spare, best, q);
            best = self.euclid(col, pivot).expect("column stays nonzero");
        }
        let v = self.entries[best][col];
        if d - v < v {
            self.op(RowOp::Negate(best + 1));
        }
        if best != pivot {
            self.op(RowOp::Swap(best + 1, pivot + 1));
        }
    }

    /// Euclid on rows `pivot..` of `col` until at most one is nonzero;
    /// returns that row.
    fn euclid(&mut self, col: usize, pivot: usize) -> Option<usize> {
        loop {
            let live: Vec<usize> = (pivot..self.rows())
                .filter(|&i| self.entries[i][col] != 0)
                .collect();
            let &smallest = live.iter().min_by_key(|&&i| (self.entries[i][col], i))?;
            if live.len() == 1 {
                return Some(smallest);
            }
            let v = self.entries[smallest][col];
            for &k in live.iter().filter(|&&k| k != smallest) {
                let q = self.entries[k][col] / v;
                self.subtract_multiple(k, smallest, q);
            }
        }
    }

    /// `row[target] -= q * row[source]`, as `neg source; add target source (q times); neg source`.
    fn subtract_multiple(&mut self, target: usize, source: usize, q: u64) {
        if q == 0 {
            return;
        }
        self.op(RowOp::Negate(source + 1));
        for _ in 0..q {
            self.op(RowOp::Add {
                target: target + 1,
                source: source + 1,
            });
        }
        self.op(RowOp::Negate(source + 1));
    }

    fn op(&mut self, op: RowOp) {
        self.apply_in_place(op)
            .expect("internally generated row ops are in range");
    }

    /// Diagonal entries `e_j` for `j < min(m, r)`.
    pub fn diagonal(&self) -> Vec<CyclicElem> {
        (0..self.cols().min(self.rows()))
            .map(|j| self.entry(j, j))
            .collect()
    }

    pub fn is_upper_triangular(&self) -> bool {
        (0..self.cols()).all(|j| (j + 1..self.rows()).all(|i| self.entries[i][j] == 0))
    }

    pub fn nonzero_column_count(&self) -> usize {
        (0..self.cols())
            .filter(|&j| self.entries.iter().any(|row| row[j] != 0))
            .count()
    }
}

impl fmt::Display for AttachingMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let moduli: Vec<String> = self.moduli.iter().map(|d| format!("Z/{d}")).collect();
        writeln!(f, "over ({})", moduli.join(", "))?;
        for row in &self.entries {
            let cells: Vec<String> = row.iter().map(u64::to_string).collect();
            writeln!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

fn check_moduli_chain(moduli: &[u64]) -> Result<()> {
    if let Some(&d) = moduli.iter().find(|&&d| d == 0) {
        return Err(Error::invalid(format!(
            "column modulus {d} must be positive"
        )));
    }
    for w in moduli.windows(2) {
        if w[1] % w[0] != 0 {
            return Err(Error::invalid(format!(
                "column moduli must form a divisibility chain, but {} does not divide {}",
                w[0], w[1]
            )));
        }
    }
    Ok(())
}

fn apply_to(state: &mut [Vec<u64>], moduli: &[u64], op: RowOp) {
    match op {
        RowOp::Add { target, source } => {
            let src = state[source - 1].clone();
            for ((x, s), &d) in state[target - 1].iter_mut().zip(src).zip(moduli) {
                *x = ((*x as u128 + s as u128) % d as u128) as u64;
            }
        }
        RowOp::Swap(a, b) => state.swap(a - 1, b - 1),
        RowOp::Negate(a) => {
            for (x, &d) in state[a - 1].iter_mut().zip(moduli) {
                *x = (d - *x) % d;
            }
        }
    }
}

/// Every row operation valid on `rows` rows.
pub fn all_rowops(rows: usize) -> Vec<RowOp> {
    let mut ops = Vec::new();
    for a in 1..=rows {
        ops.push(RowOp::Negate(a));
        for b in 1..=rows {
            if a != b {
                ops.push(RowOp::Add {
                    target: a,
                    source: b,
                });
                if a < b {
                    ops.push(RowOp::Swap(a, b));
                }
            }
        }
    }
    ops
}

/// Breadth-first search of the orbit of `from` under all row operations.
///
/// Returns `None` when the orbit exceeds `limit` states before `to` is found.
pub fn orbit_contains(
    moduli: &[u64],
    from: &[Vec<u64>],
    to: &[Vec<u64>],
    limit: usize,
) -> Option<bool> {
    let ops = all_rowops(from.len());
    let mut seen: HashSet<Vec<Vec<u64>>> = HashSet::new();
    let mut queue = VecDeque::new();
    seen.insert(from.to_vec());
    queue.push_back(from.to_vec());
    while let Some(state) = queue.pop_front() {
        if state == to {
            return Some(true);
        }
        for &op in &ops {
            let mut next = state.clone();
            apply_to(&mut next, moduli, op);
            if seen.insert(next.clone()) {
                if seen.len() > limit {
                    return None;
                }
                queue.push_back(next);
            }
        }
    }
    Some(false)
}

/// Square matrix over the field with two elements.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct F2Matrix {
    bits: Vec<Vec<bool>>,
}

impl F2Matrix {
    pub fn new(bits: Vec<Vec<bool>>) -> Result<Self> {
        let n = bits.len();
        if let Some(row) = bits.iter().find(|r| r.len() != n) {
            return Err(Error::invalid(format!(
                "F2 matrix must be square: {n} rows but a row of length {}",
                row.len()
            )));
        }
        Ok(F2Matrix { bits })
    }

    pub fn from_ints(rows: &[Vec<u8>]) -> Result<Self> {
        let bits = rows
            .iter()
            .map(|r| {
                r.iter()
                    .map(|&b| match b {
                        0 => Ok(false),
                        1 => Ok(true),
                        _ => Err(Error::invalid(format!("F2 entry must be 0 or 1, got {b}"))),
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        F2Matrix::new(bits)
    }

    pub fn zero(n: usize) -> Self {
        F2Matrix {
            bits: vec![vec![false; n]; n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = F2Matrix::zero(n);
        for i in 0..n {
            m.bits[i][i] = true;
        }
        m
    }

    pub fn size(&self) -> usize {
        self.bits.len()
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        self.bits[i][j]
    }

    /// Rank by Gaussian elimination.
    pub fn rank(&self) -> usize {
        let mut rows = self.bits.clone();
        let n = rows.len();
        let mut rank = 0;
        for col in 0..n {
            let Some(p) = (rank..n).find(|&i| rows[i][col]) else {
                continue;
            };
            rows.swap(rank, p);
            let pivot = rows[rank].clone();
            for (i, row) in rows.iter_mut().enumerate() {
                if i != rank && row[col] {
                    row.iter_mut().zip(&pivot).for_each(|(x, &y)| *x ^= y);
                }
            }
            rank += 1;
        }
        rank
    }
}

pub fn rank_f2(c: &F2Matrix) -> usize {
    c.rank()
}

pub fn nonzero_column_count(b: &AttachingMatrix) -> usize {
    b.nonzero_column_count()
}

pub fn reduce_restricted(b: &AttachingMatrix) -> AttachingMatrix {
    b.reduce_restricted()
}

pub fn apply_rowop(b: &AttachingMatrix, op: RowOp) -> Result<AttachingMatrix> {
    b.apply_rowop(op)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mat(moduli: &[u64], rows: &[&[i64]]) -> AttachingMatrix {
        AttachingMatrix::new(moduli.to_vec(), rows.iter().map(|r| r.to_vec()).collect()).unwrap()
    }

    #[test]
    fn rowop_examples() {
        let b = mat(&[24], &[&[1], &[0]]);
        let b = b
            .apply_rowop(RowOp::Add {
                target: 2,
                source: 1,
            })
            .unwrap();
        assert_eq!(b.residues(), &[vec![1], vec![1]]);
        assert_eq!(
            b.oplog(),
            &[RowOp::Add {
                target: 2,
                source: 1
            }]
        );

        let b = mat(&[8], &[&[5], &[3]])
            .apply_rowop(RowOp::Negate(1))
            .unwrap();
        assert_eq!(b.residues(), &[vec![3], vec![3]]);

        let b = mat(&[4, 8], &[&[2, 1], &[0, 3]])
            .apply_rowop(RowOp::Swap(1, 2))
            .unwrap();
        assert_eq!(b.residues(), &[vec![0, 3], vec![2, 1]]);
    }

    #[test]
    fn rowop_out_of_range() {
        let b = mat(&[8], &[&[1], &[2]]);
        assert!(b.apply_rowop(RowOp::Negate(3)).is_err());
        assert!(b
            .apply_rowop(RowOp::Add {
                target: 1,
                source: 1
            })
            .is_err());
        assert!(b.apply_rowop(RowOp::Swap(0, 1)).is_err());
    }

    #[test]
    fn construction_checks() {
        assert!(AttachingMatrix::new(vec![4, 6], vec![vec![0, 0]]).is_err());
        assert!(AttachingMatrix::new(vec![8], vec![vec![8]]).is_err());
        assert!(AttachingMatrix::new(vec![8], vec![]).is_err());
        assert!(AttachingMatrix::new(vec![8], vec![vec![1, 2]]).is_err());
        assert!(AttachingMatrix::new(vec![0], vec![vec![0]]).is_err());
    }

    #[test]
    fn reduce_examples() {
        let r = mat(&[240], &[&[2], &[3]]).reduce_restricted();
        assert_eq!(r.residues(), &[vec![1], vec![0]]);
        assert!(r.log_certifies());

        let r = mat(&[8], &[&[4], &[6]]).reduce_restricted();
        assert_eq!(r.residues(), &[vec![2], vec![0]]);

        let z = AttachingMatrix::zeros(3, vec![2, 4]).unwrap();
        let r = z.reduce_restricted();
        assert_eq!(r.residues(), z.residues());
        assert!(r.oplog().is_empty());
    }

    #[test]
    fn reduce_lifts_zero_row() {
        // 3 alone generates Z/8 but needs the second row to reach 1
        let r = mat(&[8], &[&[3], &[0]]).reduce_restricted();
        assert_eq!(r.residues(), &[vec![1], vec![0]]);
        assert!(r.log_certifies());
    }

    #[test]
    fn single_row_only_negates() {
        let r = mat(&[8], &[&[5]]).reduce_restricted();
        assert_eq!(r.residues(), &[vec![3]]);
    }

    #[test]
    fn nonzero_columns() {
        assert_eq!(mat(&[4, 4], &[&[0, 3], &[0, 0]]).nonzero_column_count(), 1);
        assert_eq!(
            AttachingMatrix::zeros(2, vec![2, 2])
                .unwrap()
                .nonzero_column_count(),
            0
        );
        assert_eq!(mat(&[2, 2], &[&[1, 1], &[1, 1]]).nonzero_column_count(), 2);
    }

    #[test]
    fn oplog_text_round_trip() {
        let r = mat(&[24, 24], &[&[4, 1], &[6, 5], &[9, 2]]).reduce_restricted();
        assert_eq!(parse_oplog(&r.oplog_text()).unwrap(), r.oplog());
        assert!(parse_oplog("mul 1 2").is_err());
        assert!(parse_oplog("# comment\n\nneg 2\n").unwrap() == vec![RowOp::Negate(2)]);
    }

    #[test]
    fn f2_rank_examples() {
        assert_eq!(F2Matrix::identity(3).rank(), 3);
        assert_eq!(F2Matrix::zero(2).rank(), 0);
        assert_eq!(
            F2Matrix::from_ints(&[vec![1, 1], vec![1, 1]])
                .unwrap()
                .rank(),
            1
        );
        assert!(F2Matrix::from_ints(&[vec![1, 2], vec![0, 1]]).is_err());
        assert!(F2Matrix::from_ints(&[vec![1, 0]]).is_err());
    }

    #[test]
    fn orbit_search() {
        let from = vec![vec![2], vec![3]];
        assert_eq!(
            orbit_contains(&[240], &from, &[vec![1], vec![0]], 1 << 20),
            Some(true)
        );
        // a single row only reaches +-v
        assert_eq!(
            orbit_contains(&[8], &[vec![3]], &[vec![1]], 100),
            Some(false)
        );
    }
}
