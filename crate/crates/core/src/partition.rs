//! Integer partitions, Young diagrams and skew cell sets.
//!
//! Diagrams use English notation with 1-based `(row, column)` cells. A
//! [`Partition`] never stores trailing zero parts, so structural equality is
//! equality of partitions.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::arith::factorial;
use crate::error::{Error, Result};

#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    /// Builds a partition from weakly decreasing parts. Trailing zeros are
    /// dropped; any other zero or an increase is rejected.
    pub fn new(mut parts: Vec<usize>) -> Result<Self> {
        while parts.last() == Some(&0) {
            parts.pop();
        }
        if parts.contains(&0) {
            return Err(Error::InvalidPartition(format!("{parts:?} has an interior zero part")));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidPartition(format!("{parts:?} is not weakly decreasing")));
        }
        Ok(Partition { parts })
    }

    /// Sorts arbitrary positive parts into a partition (used for cycle types).
    pub fn from_unsorted(mut parts: Vec<usize>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition { parts }
    }

    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    /// The `rows x cols` rectangle (`rows` parts equal to `cols`).
    pub fn rectangle(rows: usize, cols: usize) -> Self {
        if rows == 0 || cols == 0 {
            return Self::empty();
        }
        Partition { parts: vec![cols; rows] }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// Part `i` (0-based), zero past the end.
    pub fn part(&self, i: usize) -> usize {
        self.parts.get(i).copied().unwrap_or(0)
    }

    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    /// Number of (nonzero) parts.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn conjugate(&self) -> Partition {
        let width = self.part(0);
        let parts = (1..=width)
            .map(|j| self.parts.iter().take_while(|&&p| p >= j).count())
            .collect();
        Partition { parts }
    }

    pub fn contains_cell(&self, cell: Cell) -> bool {
        cell.row >= 1 && cell.col >= 1 && cell.col <= self.part(cell.row - 1)
    }

    /// Whether the diagram of `other` is contained in this one.
    pub fn contains(&self, other: &Partition) -> bool {
        other.len() <= self.len() && other.parts.iter().zip(&self.parts).all(|(a, b)| a <= b)
    }

    pub fn fits_in(&self, rows: usize, cols: usize) -> bool {
        self.len() <= rows && self.part(0) <= cols
    }

    /// Cells in row-major order.
    pub fn cells(&self) -> impl Iterator<Item = Cell> + '_ {
        self.parts
            .iter()
            .enumerate()
            .flat_map(|(i, &len)| (1..=len).map(move |j| Cell::new(i + 1, j)))
    }

    pub fn hook_length(&self, cell: Cell) -> Result<usize> {
        if !self.contains_cell(cell) {
            return Err(Error::CellOutsideDiagram { row: cell.row, col: cell.col });
        }
        let conj = self.conjugate();
        Ok(self.hook_with_conjugate(&conj, cell))
    }

    fn hook_with_conjugate(&self, conj: &Partition, cell: Cell) -> usize {
        self.part(cell.row - 1) + conj.part(cell.col - 1) + 1 - cell.row - cell.col
    }

    /// All hook lengths in row-major cell order.
    pub fn hook_lengths(&self) -> Vec<usize> {
        let conj = self.conjugate();
        self.cells().map(|c| self.hook_with_conjugate(&conj, c)).collect()
    }

    /// `H_λ`, the product of all hook lengths (1 for the empty partition).
    pub fn hook_product(&self) -> BigInt {
        self.hook_lengths().into_iter().fold(BigInt::one(), |acc, h| acc * h)
    }

    /// Number of standard Young tableaux, by the hook length formula.
    pub fn syt_count(&self) -> BigInt {
        factorial(self.size()) / self.hook_product()
    }

    /// The complement of `self` in the `rows x cols` rectangle, rotated by
    /// 180 degrees: part `i` is `cols - λ_{rows+1-i}`.
    pub fn complement(&self, rows: usize, cols: usize) -> Result<Partition> {
        self.check_fits(rows, cols)?;
        let parts = (0..rows).map(|i| cols - self.part(rows - 1 - i)).collect();
        Partition::new(parts)
    }

    fn check_fits(&self, rows: usize, cols: usize) -> Result<()> {
        if self.fits_in(rows, cols) {
            Ok(())
        } else {
            Err(Error::NotContained { shape: self.to_string(), rows, cols })
        }
    }

    /// The skew diagram `SQ(λ)` of size `rows*cols + |λ|`.
    ///
    /// Placement: the rectangle occupies a block of `rows` rows with the
    /// 180°-rotated copy of `λ` removed from its lower right corner. One
    /// rotated copy of `λ` sits directly above the rectangle, flush with its
    /// right edge; another sits directly to the left of the rectangle, flush
    /// with its bottom edge. Coordinates are shifted so that every cell is
    /// 1-based: the upper copy occupies rows `1..=ℓ(λ)` and the rectangle
    /// rows `ℓ(λ)+1..=ℓ(λ)+rows`, and columns are offset by `λ_1`. Row `r` of
    /// the rectangle block is the interval of length `cols` shifted left by
    /// `λ_{rows+1-r}`.
    pub fn sq_shape(&self, rows: usize, cols: usize) -> Result<CellSet> {
        self.check_fits(rows, cols)?;
        let ell = self.len();
        let shift = self.part(0);
        let mut cells = BTreeSet::new();
        for i in 1..=ell {
            let row = ell + 1 - i;
            let lam = self.part(i - 1);
            for col in (shift + cols - lam + 1)..=(shift + cols) {
                cells.insert(Cell::new(row, col));
            }
        }
        for r in 1..=rows {
            let lam = self.part(rows - r);
            for col in (shift + 1 - lam)..=(shift + cols - lam) {
                cells.insert(Cell::new(ell + r, col));
            }
        }
        CellSet::new(cells)
    }

    /// All partitions of `n`, in reverse lexicographic order.
    pub fn all(n: usize) -> Vec<Partition> {
        Self::bounded(n, usize::MAX, n)
    }

    /// Partitions of `n` fitting inside the `rows x cols` rectangle.
    pub fn in_box(n: usize, rows: usize, cols: usize) -> Vec<Partition> {
        Self::bounded(n, rows, cols)
    }

    /// Every partition contained in the `rows x cols` rectangle, any size.
    pub fn all_in_box(rows: usize, cols: usize) -> Vec<Partition> {
        (0..=rows * cols).flat_map(|n| Self::in_box(n, rows, cols)).collect()
    }

    fn bounded(n: usize, max_len: usize, max_part: usize) -> Vec<Partition> {
        fn go(rest: usize, max_len: usize, max_part: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
            if rest == 0 {
                out.push(Partition { parts: cur.clone() });
                return;
            }
            if cur.len() == max_len {
                return;
            }
            for part in (1..=rest.min(max_part)).rev() {
                cur.push(part);
                go(rest - part, max_len, part, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        go(n, max_len, max_part, &mut Vec::new(), &mut out);
        out
    }

    /// Multiplicities `m_i` of each part size `i` (index 0 unused).
    pub fn multiplicities(&self) -> Vec<usize> {
        let mut mult = vec![0; self.part(0) + 1];
        for &p in &self.parts {
            mult[p] += 1;
        }
        mult
    }

    /// This partition with `extra` parts equal to 1 appended.
    pub fn with_ones(&self, extra: usize) -> Partition {
        let mut parts = self.parts.clone();
        parts.extend(std::iter::repeat_n(1, extra));
        Partition { parts }
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.parts.is_empty() {
            return f.write_str("-");
        }
        let joined: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
        f.write_str(&joined.join(","))
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self)
    }
}

impl FromStr for Partition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "-" || s.is_empty() {
            return Ok(Self::empty());
        }
        let parts = s
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::Parse(format!("bad partition part {t:?} in {s:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Partition::new(parts)
    }
}

impl TryFrom<Vec<usize>> for Partition {
    type Error = Error;

    fn try_from(parts: Vec<usize>) -> Result<Self> {
        Partition::new(parts)
    }
}

impl From<Partition> for Vec<usize> {
    fn from(p: Partition) -> Self {
        p.parts
    }
}

/// `c(u) = j - i`.
pub fn content(cell: Cell) -> i64 {
    cell.col as i64 - cell.row as i64
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Cell {
    pub row: usize,
    pub col: usize,
}

impl Cell {
    pub fn new(row: usize, col: usize) -> Self {
        Cell { row, col }
    }
}

/// A finite skew diagram: a set of cells that is convex in the product
/// order, i.e. `a <= c <= b` with `a, b` in the set forces `c` in the set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CellSet {
    cells: BTreeSet<Cell>,
}

impl CellSet {
    pub fn new(cells: impl IntoIterator<Item = Cell>) -> Result<Self> {
        let cells: BTreeSet<Cell> = cells.into_iter().collect();
        if let Some(c) = cells.iter().find(|c| c.row == 0 || c.col == 0) {
            return Err(Error::MalformedCellSet(format!("cell {c:?} is not 1-based")));
        }
        for a in &cells {
            for b in &cells {
                if a.row <= b.row && a.col <= b.col {
                    for r in a.row..=b.row {
                        for c in a.col..=b.col {
                            if !cells.contains(&Cell::new(r, c)) {
                                return Err(Error::MalformedCellSet(format!(
                                    "({r},{c}) lies between {a:?} and {b:?} but is missing"
                                )));
                            }
                        }
                    }
                }
            }
        }
        Ok(CellSet { cells })
    }

    pub fn from_partition(shape: &Partition) -> Self {
        CellSet { cells: shape.cells().collect() }
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn cells(&self) -> impl Iterator<Item = &Cell> {
        self.cells.iter()
    }

    pub fn contains(&self, cell: Cell) -> bool {
        self.cells.contains(&cell)
    }

    /// Hook lengths of every cell, counted directly (arm + leg + 1), sorted
    /// ascending so two multisets compare with `==`.
    pub fn hooks(&self) -> Vec<usize> {
        let mut hooks: Vec<usize> = self
            .cells
            .iter()
            .map(|u| {
                let arm = self.cells.iter().filter(|v| v.row == u.row && v.col > u.col).count();
                let leg = self.cells.iter().filter(|v| v.col == u.col && v.row > u.row).count();
                arm + leg + 1
            })
            .collect();
        hooks.sort_unstable();
        hooks
    }

    pub fn hook_product(&self) -> BigInt {
        self.hooks().into_iter().fold(BigInt::one(), |acc, h| acc * h)
    }
}

/// Sorted multiset union of two hook lists.
pub fn multiset_union(a: &[usize], b: &[usize]) -> Vec<usize> {
    let mut out: Vec<usize> = a.iter().chain(b).copied().collect();
    out.sort_unstable();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    #[test]
    fn conjugates() {
        assert_eq!(p("4,3,1").conjugate(), p("3,2,2,1"));
        assert_eq!(Partition::empty().conjugate(), Partition::empty());
        assert_eq!(Partition::rectangle(3, 5).conjugate(), Partition::rectangle(5, 3));
    }

    #[test]
    fn rejects_bad_parts() {
        assert!(Partition::new(vec![1, 2]).is_err());
        assert!(Partition::new(vec![2, 0, 1]).is_err());
        assert_eq!(Partition::new(vec![2, 1, 0, 0]).unwrap(), p("2,1"));
        assert!("3,x".parse::<Partition>().is_err());
    }

    #[test]
    fn serialization() {
        assert_eq!(p("4,3,1").to_string(), "4,3,1");
        assert_eq!(Partition::empty().to_string(), "-");
        assert_eq!(p("-"), Partition::empty());
        let json = serde_json::to_string(&p("2,2,1")).unwrap();
        assert_eq!(json, "[2,2,1]");
        assert!(serde_json::from_str::<Partition>("[1,2]").is_err());
    }

    #[test]
    fn hooks_and_contents() {
        assert_eq!(p("1").hook_length(Cell::new(1, 1)).unwrap(), 1);
        assert_eq!(p("4,3,1").hook_length(Cell::new(1, 1)).unwrap(), 6);
        assert_eq!(p("2,2").hook_length(Cell::new(1, 1)).unwrap(), 3);
        assert_eq!(
            p("2,2").hook_length(Cell::new(3, 1)),
            Err(Error::CellOutsideDiagram { row: 3, col: 1 })
        );
        assert_eq!(content(Cell::new(1, 1)), 0);
        assert_eq!(content(Cell::new(1, 4)), 3);
        assert_eq!(content(Cell::new(3, 1)), -2);
    }

    #[test]
    fn hook_products_and_syt() {
        assert_eq!(Partition::empty().hook_product(), BigInt::from(1));
        assert_eq!(p("1").hook_product(), BigInt::from(1));
        assert_eq!(p("2,2").hook_product(), BigInt::from(12));
        assert_eq!(p("1").syt_count(), BigInt::from(1));
        assert_eq!(p("2,2").syt_count(), BigInt::from(2));
        assert_eq!(p("2,1").syt_count(), BigInt::from(2));
    }

    #[test]
    fn complements() {
        assert_eq!(p("4,3,1").complement(4, 6).unwrap(), p("6,5,3,2"));
        assert_eq!(Partition::empty().complement(3, 2).unwrap(), Partition::rectangle(3, 2));
        assert_eq!(Partition::rectangle(3, 2).complement(3, 2).unwrap(), Partition::empty());
        assert!(p("3").complement(2, 2).is_err());
        assert!(p("1,1,1").complement(2, 2).is_err());
    }

    #[test]
    fn sq_shapes() {
        let d = Partition::empty().sq_shape(2, 2).unwrap();
        assert_eq!(d, CellSet::from_partition(&Partition::rectangle(2, 2)));

        let d = p("1").sq_shape(1, 1).unwrap();
        assert_eq!(d.len(), 2);
        assert_eq!(d.hooks(), vec![1, 1]);

        let d = p("4,3,1").sq_shape(4, 6).unwrap();
        assert_eq!(d.len(), 32);
        let expected = multiset_union(&Partition::rectangle(4, 6).hook_lengths(), &p("4,3,1").hook_lengths());
        assert_eq!(d.hooks(), expected);
    }

    #[test]
    fn cellset_hooks_basic() {
        let one = CellSet::new([Cell::new(1, 1)]).unwrap();
        assert_eq!(one.hooks(), vec![1]);
        let block = CellSet::from_partition(&p("2,2"));
        assert_eq!(block.hooks(), vec![1, 2, 2, 3]);
    }

    #[test]
    fn malformed_cell_sets() {
        // gap inside a row
        assert!(CellSet::new([Cell::new(1, 1), Cell::new(1, 3)]).is_err());
        // (2,2) without (1,2) or (2,1) in between (1,1) and (2,2)
        assert!(CellSet::new([Cell::new(1, 1), Cell::new(2, 2)]).is_err());
        assert!(CellSet::new([Cell::new(0, 1)]).is_err());
        // disconnected but convex is fine
        assert!(CellSet::new([Cell::new(1, 2), Cell::new(2, 1)]).is_ok());
    }

    #[test]
    fn partition_counts() {
        let counts: Vec<usize> = (0..=10).map(|n| Partition::all(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42]);
        assert_eq!(Partition::all_in_box(5, 5).len(), 252);
        assert_eq!(Partition::in_box(4, 2, 2), vec![p("2,2")]);
    }
}
