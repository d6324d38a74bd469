//! Affine forms and the Cayley tables they produce.
//!
//! Text format for a table of order `n`: the line `n`, then `n` lines of `n`
//! space-separated indices. Several tables may be concatenated in one file.

use std::fmt::Write as _;

use crate::gl2::{commutes, Automorphism};
use crate::group::{Endomorphism, GroupElement, GroupSpec};
use crate::{Error, Result};

/// `x * y = φ(x) + ψ(y) + c` over `group`, with `φψ = ψφ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AffineForm {
    group: GroupSpec,
    phi: Automorphism,
    psi: Automorphism,
    c: GroupElement,
}

impl AffineForm {
    pub fn new(group: GroupSpec, phi: Automorphism, psi: Automorphism, c: GroupElement) -> Result<Self> {
        if !group.admits_automorphism(&phi) || !group.admits_automorphism(&psi) || !group.contains(&c) {
            return Err(Error::GroupMismatch);
        }
        if !commutes(&phi, &psi)? {
            return Err(Error::NotCommuting);
        }
        Ok(AffineForm { group, phi, psi, c })
    }

    pub fn group(&self) -> GroupSpec {
        self.group
    }

    pub fn phi(&self) -> Automorphism {
        self.phi
    }

    pub fn psi(&self) -> Automorphism {
        self.psi
    }

    pub fn c(&self) -> GroupElement {
        self.c
    }
}

/// The operation table of a finite binary system on `0..n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CayleyTable {
    n: usize,
    cells: Vec<u32>,
}

impl CayleyTable {
    pub fn from_rows(rows: &[Vec<usize>]) -> Result<Self> {
        let n = rows.len();
        let mut cells = Vec::with_capacity(n * n);
        for row in rows {
            if row.len() != n {
                return Err(Error::InvalidArgument(format!("row of length {} in a table of order {n}", row.len())));
            }
            for &v in row {
                if v >= n {
                    return Err(Error::InvalidArgument(format!("entry {v} out of range for order {n}")));
                }
                cells.push(v as u32);
            }
        }
        Ok(CayleyTable { n, cells })
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> usize {
        self.cells[i * self.n + j] as usize
    }

    pub fn row(&self, i: usize) -> &[u32] {
        &self.cells[i * self.n..(i + 1) * self.n]
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        (0..self.n).map(|i| self.row(i).iter().map(|&v| v as usize).collect()).collect()
    }

    /// The table of the same operation after renaming each `i` to `perm[i]`.
    pub fn relabel(&self, perm: &[usize]) -> CayleyTable {
        assert_eq!(perm.len(), self.n);
        let mut cells = vec![0; self.n * self.n];
        for i in 0..self.n {
            for j in 0..self.n {
                cells[perm[i] * self.n + perm[j]] = perm[self.get(i, j)] as u32;
            }
        }
        CayleyTable { n: self.n, cells }
    }

    /// One table in text format.
    pub fn to_text(&self) -> String {
        let mut out = format!("{}\n", self.n);
        for line in self.row_lines() {
            out.push_str(&line);
            out.push('\n');
        }
        out
    }

    /// Each row as a line of space-separated indices.
    pub fn row_lines(&self) -> Vec<String> {
        (0..self.n)
            .map(|i| {
                let mut line = String::new();
                for (j, v) in self.row(i).iter().enumerate() {
                    if j > 0 {
                        line.push(' ');
                    }
                    write!(line, "{v}").unwrap();
                }
                line
            })
            .collect()
    }
}

/// Parses zero or more concatenated tables in text format. Blank lines are skipped.
pub fn parse_tables(text: &str) -> Result<Vec<CayleyTable>> {
    let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
    let mut tables = Vec::new();
    while let Some((ln, header)) = lines.next() {
        let n: usize = header
            .trim()
            .parse()
            .map_err(|_| Error::Parse { line: ln + 1, msg: format!("expected an order, found {header:?}") })?;
        let mut rows = Vec::with_capacity(n);
        for _ in 0..n {
            let (ln, line) = lines.next().ok_or(Error::Parse { line: ln + 1, msg: "truncated table".into() })?;
            let row = line
                .split_whitespace()
                .map(|t| t.parse::<usize>())
                .collect::<std::result::Result<Vec<_>, _>>()
                .map_err(|e| Error::Parse { line: ln + 1, msg: e.to_string() })?;
            rows.push(row);
        }
        tables.push(CayleyTable::from_rows(&rows).map_err(|e| Error::Parse { line: ln + 1, msg: e.to_string() })?);
    }
    Ok(tables)
}

/// `table[i][j]` is the index of `φ(g_i) + ψ(g_j) + c`.
pub fn build_table(f: &AffineForm) -> CayleyTable {
    let g = f.group;
    let n = g.order();
    let phi = Endomorphism::from(f.phi);
    let psi = Endomorphism::from(f.psi);
    let c = g.index_of(&f.c).expect("checked at construction");
    let phi_img: Vec<usize> = (0..n).map(|i| g.add_index(g.apply_index(&phi, i), c)).collect();
    let psi_img: Vec<usize> = (0..n).map(|j| g.apply_index(&psi, j)).collect();
    let mut cells = Vec::with_capacity(n * n);
    for &x in &phi_img {
        for &y in &psi_img {
            cells.push(g.add_index(x, y) as u32);
        }
    }
    CayleyTable { n, cells }
}

/// Every row and every column is a permutation of `0..n`.
pub fn is_latin(t: &CayleyTable) -> bool {
    let n = t.n;
    let mut seen = vec![0usize; n];
    let mut stamp = 0;
    for i in 0..n {
        stamp += 1;
        for j in 0..n {
            let v = t.get(i, j);
            if seen[v] == stamp {
                return false;
            }
            seen[v] = stamp;
        }
        stamp += 1;
        for j in 0..n {
            let v = t.get(j, i);
            if seen[v] == stamp {
                return false;
            }
            seen[v] = stamp;
        }
    }
    true
}

/// `(x*y)*(u*v) = (x*u)*(y*v)` for all `n⁴` quadruples.
pub fn is_medial(t: &CayleyTable) -> bool {
    let n = t.n;
    let cells = &t.cells;
    for x in 0..n {
        let row_x = &cells[x * n..(x + 1) * n];
        for y in 0..n {
            let xy = row_x[y] as usize;
            let row_xy = &cells[xy * n..(xy + 1) * n];
            let row_y = &cells[y * n..(y + 1) * n];
            for u in 0..n {
                let xu = row_x[u] as usize;
                let row_xu = &cells[xu * n..(xu + 1) * n];
                let row_u = &cells[u * n..(u + 1) * n];
                let ok = row_u.iter().zip(row_y).all(|(&uv, &yv)| row_xy[uv as usize] == row_xu[yv as usize]);
                if !ok {
                    return false;
                }
            }
        }
    }
    true
}

pub fn count_idempotents(t: &CayleyTable) -> usize {
    (0..t.n).filter(|&i| t.get(i, i) == i).count()
}

/// Sorted lengths of the cycles in the functional graph of `f` on `0..n`.
/// For a permutation this is its cycle type.
pub(crate) fn cycle_type(f: impl Fn(usize) -> usize, n: usize) -> Vec<usize> {
    // 0 = unvisited, 1 = on the current path, 2 = finished
    let mut state = vec![0u8; n];
    let mut pos = vec![0usize; n];
    let mut lengths = Vec::new();
    let mut path = Vec::new();
    for start in 0..n {
        if state[start] != 0 {
            continue;
        }
        path.clear();
        let mut i = start;
        while state[i] == 0 {
            state[i] = 1;
            pos[i] = path.len();
            path.push(i);
            i = f(i);
        }
        if state[i] == 1 {
            lengths.push(path.len() - pos[i]);
        }
        for &j in &path {
            state[j] = 2;
        }
    }
    lengths.sort_unstable();
    lengths
}

/// Cycle type of the left translation `j ↦ t[i][j]`.
pub fn row_cycle_type(t: &CayleyTable, i: usize) -> Vec<usize> {
    cycle_type(|j| t.get(i, j), t.n)
}

/// Cycle type of the right translation `i ↦ t[i][j]`.
pub fn column_cycle_type(t: &CayleyTable, j: usize) -> Vec<usize> {
    cycle_type(|i| t.get(i, j), t.n)
}
