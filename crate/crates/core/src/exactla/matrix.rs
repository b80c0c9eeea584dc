use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::One;

use super::elim::{i128_row, Arith, Echelon, FractionFree, ModP, Overflow, SparseRow};
use super::field::{FieldSpec, Scalar};
use crate::error::{Error, Result};

/// A sparse matrix over ℚ or 𝔽ₚ. Rows are stored as column-sorted lists of
/// nonzero entries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactMatrix {
    field: FieldSpec,
    rows: usize,
    cols: usize,
    data: Vec<Vec<(usize, Scalar)>>,
}

impl ExactMatrix {
    pub fn zeros(field: FieldSpec, rows: usize, cols: usize) -> Self {
        ExactMatrix {
            field,
            rows,
            cols,
            data: vec![Vec::new(); rows],
        }
    }

    pub fn identity(field: FieldSpec, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.data[i].push((i, field.one()));
        }
        m
    }

    /// Builds a matrix from integer triplets; repeated positions are summed.
    pub fn from_triplets<I>(field: FieldSpec, rows: usize, cols: usize, entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize, i64)>,
    {
        let mut acc: Vec<BTreeMap<usize, i64>> = vec![BTreeMap::new(); rows];
        for (r, c, v) in entries {
            if r >= rows || c >= cols {
                return Err(Error::DimensionMismatch(format!(
                    "entry ({r}, {c}) outside {rows}x{cols}"
                )));
            }
            *acc[r].entry(c).or_insert(0) += v;
        }
        let data = acc
            .into_iter()
            .map(|row| {
                row.into_iter()
                    .map(|(c, v)| (c, field.from_i64(v)))
                    .filter(|(_, s)| !s.is_zero())
                    .collect()
            })
            .collect();
        Ok(ExactMatrix {
            field,
            rows,
            cols,
            data,
        })
    }

    pub fn from_dense(field: FieldSpec, rows: &[Vec<i64>]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.len());
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        Self::from_triplets(
            field,
            rows.len(),
            cols,
            rows.iter()
                .enumerate()
                .flat_map(|(i, r)| r.iter().enumerate().map(move |(j, &v)| (i, j, v))),
        )
    }

    /// Builds a matrix from scalar rows; every entry must lie in `field`.
    pub fn from_scalar_rows(field: FieldSpec, cols: usize, rows: Vec<Vec<Scalar>>) -> Result<Self> {
        let mut data = Vec::with_capacity(rows.len());
        for row in rows {
            if row.len() != cols {
                return Err(Error::DimensionMismatch("ragged rows".into()));
            }
            let mut sparse = Vec::new();
            for (c, s) in row.into_iter().enumerate() {
                if !field.contains(&s) {
                    return Err(Error::FieldMismatch);
                }
                if !s.is_zero() {
                    sparse.push((c, s));
                }
            }
            data.push(sparse);
        }
        Ok(ExactMatrix {
            field,
            rows: data.len(),
            cols,
            data,
        })
    }

    /// Builds the matrix whose columns are the given sparse vectors of length `rows`.
    pub fn from_sparse_columns(
        field: FieldSpec,
        rows: usize,
        columns: &[Vec<(usize, i64)>],
    ) -> Result<Self> {
        Self::from_triplets(
            field,
            rows,
            columns.len(),
            columns
                .iter()
                .enumerate()
                .flat_map(|(j, col)| col.iter().map(move |&(i, v)| (i, j, v))),
        )
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(Vec::len).sum()
    }

    pub fn get(&self, r: usize, c: usize) -> Scalar {
        self.data[r]
            .binary_search_by_key(&c, |e| e.0)
            .map(|i| self.data[r][i].1.clone())
            .unwrap_or_else(|_| self.field.zero())
    }

    pub fn row_entries(&self, r: usize) -> &[(usize, Scalar)] {
        &self.data[r]
    }

    pub fn transpose(&self) -> ExactMatrix {
        let mut data = vec![Vec::new(); self.cols];
        for (r, row) in self.data.iter().enumerate() {
            for (c, v) in row {
                data[*c].push((r, v.clone()));
            }
        }
        ExactMatrix {
            field: self.field,
            rows: self.cols,
            cols: self.rows,
            data,
        }
    }

    /// Reorders rows and columns: new row `i` is old row `row_perm[i]`, likewise for columns.
    pub fn permuted(&self, row_perm: &[usize], col_perm: &[usize]) -> ExactMatrix {
        let mut inv_col = vec![0; self.cols];
        for (new, &old) in col_perm.iter().enumerate() {
            inv_col[old] = new;
        }
        let data = row_perm
            .iter()
            .map(|&old| {
                let mut row: Vec<_> = self.data[old]
                    .iter()
                    .map(|(c, v)| (inv_col[*c], v.clone()))
                    .collect();
                row.sort_by_key(|e| e.0);
                row
            })
            .collect();
        ExactMatrix {
            field: self.field,
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn mul_vec(&self, x: &[Scalar]) -> Result<Vec<Scalar>> {
        if x.len() != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "vector of length {} against {} columns",
                x.len(),
                self.cols
            )));
        }
        Ok(self
            .data
            .iter()
            .map(|row| {
                row.iter().fold(self.field.zero(), |acc, (c, v)| {
                    acc + v.clone() * x[*c].clone()
                })
            })
            .collect())
    }

    /// Exact rank over the matrix's field.
    pub fn rank(&self) -> usize {
        rank_of_rows(self.field, self.cols, &self.data)
    }

    /// `rows - rank`: the dimension of the cokernel of the map `x ↦ Mx`.
    pub fn cokernel_dim(&self) -> usize {
        self.rows - self.rank()
    }

    /// Basis of the right null space `{v : Mv = 0}`.
    pub fn kernel_basis(&self) -> Vec<Vec<Scalar>> {
        let rref = Rref::compute(self.field, self.cols, &self.data);
        let pivots = rref.pivots();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains_key(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![self.field.zero(); self.cols];
                v[f] = self.field.one();
                for (&pc, row) in &pivots {
                    if let Some(x) = row.get(&f) {
                        let lead = &row[&pc];
                        v[pc] = -(x.clone() * lead.inv().unwrap());
                    }
                }
                v
            })
            .collect()
    }

    /// Some `x` with `Mx = b`, or `None` when `b` is outside the column space.
    pub fn solve(&self, b: &[Scalar]) -> Result<Option<Vec<Scalar>>> {
        if b.len() != self.rows {
            return Err(Error::DimensionMismatch(format!(
                "right-hand side of length {} against {} rows",
                b.len(),
                self.rows
            )));
        }
        if b.iter().any(|s| !self.field.contains(s)) {
            return Err(Error::FieldMismatch);
        }
        let augmented: Vec<Vec<(usize, Scalar)>> = self
            .data
            .iter()
            .zip(b)
            .map(|(row, rhs)| {
                let mut r = row.clone();
                if !rhs.is_zero() {
                    r.push((self.cols, rhs.clone()));
                }
                r
            })
            .collect();
        let rref = Rref::compute(self.field, self.cols + 1, &augmented);
        let pivots = rref.pivots();
        if pivots.contains_key(&self.cols) {
            return Ok(None);
        }
        let mut x = vec![self.field.zero(); self.cols];
        for (&pc, row) in &pivots {
            if let Some(rhs) = row.get(&self.cols) {
                x[pc] = rhs.clone() * row[&pc].inv().unwrap();
            }
        }
        Ok(Some(x))
    }

    /// Whether `v` is a linear combination of the rows.
    pub fn row_space_contains(&self, v: &[Scalar]) -> Result<bool> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch("vector length".into()));
        }
        let t = self.transpose();
        Ok(t.solve(v)?.is_some())
    }
}

/// Row data converted for one of the elimination engines.
enum Prepared {
    Mod(u64, Vec<SparseRow<u64>>),
    Int(Vec<SparseRow<BigInt>>),
}

fn prepare(field: FieldSpec, rows: &[Vec<(usize, Scalar)>]) -> Prepared {
    if field.is_rational() {
        Prepared::Int(rows.iter().map(|r| clear_denominators(r)).collect())
    } else {
        let p = field.characteristic();
        Prepared::Mod(
            p,
            rows.iter()
                .map(|r| {
                    r.iter()
                        .map(|(c, s)| match s {
                            Scalar::Residue { value, .. } => (*c, *value),
                            Scalar::Rational(_) => unreachable!("field checked on construction"),
                        })
                        .collect()
                })
                .collect(),
        )
    }
}

fn clear_denominators(row: &[(usize, Scalar)]) -> SparseRow<BigInt> {
    let rats: Vec<(usize, &BigRational)> = row
        .iter()
        .map(|(c, s)| (*c, s.as_rational().expect("rational entry")))
        .collect();
    let lcm = rats
        .iter()
        .fold(BigInt::one(), |acc, (_, r)| acc.lcm(r.denom()));
    rats.into_iter()
        .map(|(c, r)| (c, r.numer() * (&lcm / r.denom())))
        .collect()
}

fn echelon_with<A: Arith>(
    arith: &A,
    cols: usize,
    rows: Vec<SparseRow<A::E>>,
) -> std::result::Result<Echelon<A::E>, Overflow> {
    let mut e = Echelon::new(cols);
    for row in rows {
        e.insert(arith, row)?;
    }
    Ok(e)
}

pub(crate) fn rank_of_rows(field: FieldSpec, cols: usize, rows: &[Vec<(usize, Scalar)>]) -> usize {
    match prepare(field, rows) {
        Prepared::Mod(p, rows) => echelon_with(&ModP(p), cols, rows)
            .expect("mod p elimination cannot overflow")
            .rank(),
        Prepared::Int(rows) => {
            if let Some(small) = rows.iter().map(|r| i128_row(r)).collect::<Option<Vec<_>>>() {
                if let Ok(e) = echelon_with(&FractionFree::<i128>::new(), cols, small) {
                    return e.rank();
                }
            }
            echelon_with(&FractionFree::<BigInt>::new(), cols, rows)
                .expect("bigint elimination cannot overflow")
                .rank()
        }
    }
}

/// Reduced row-echelon data, with entries mapped back to field scalars.
struct Rref {
    rows: Vec<Vec<(usize, Scalar)>>,
}

impl Rref {
    fn compute(field: FieldSpec, cols: usize, rows: &[Vec<(usize, Scalar)>]) -> Rref {
        let to_scalars = |rows: Vec<SparseRow<BigInt>>| -> Vec<Vec<(usize, Scalar)>> {
            rows.into_iter()
                .map(|r| {
                    r.into_iter()
                        .map(|(c, v)| (c, Scalar::Rational(BigRational::from_integer(v))))
                        .collect()
                })
                .collect()
        };
        match prepare(field, rows) {
            Prepared::Mod(p, rows) => {
                let arith = ModP(p);
                let mut e = echelon_with(&arith, cols, rows).expect("no overflow mod p");
                e.fully_reduce(&arith).expect("no overflow mod p");
                Rref {
                    rows: e
                        .rows
                        .into_iter()
                        .map(|r| {
                            r.into_iter()
                                .map(|(c, v)| {
                                    (
                                        c,
                                        Scalar::Residue {
                                            value: v,
                                            modulus: p,
                                        },
                                    )
                                })
                                .collect()
                        })
                        .collect(),
                }
            }
            Prepared::Int(rows) => {
                if let Some(small) = rows.iter().map(|r| i128_row(r)).collect::<Option<Vec<_>>>() {
                    let arith = FractionFree::<i128>::new();
                    let attempt = echelon_with(&arith, cols, small).and_then(|mut e| {
                        e.fully_reduce(&arith)?;
                        Ok(e)
                    });
                    if let Ok(e) = attempt {
                        return Rref {
                            rows: to_scalars(
                                e.rows
                                    .into_iter()
                                    .map(|r| {
                                        r.into_iter().map(|(c, v)| (c, BigInt::from(v))).collect()
                                    })
                                    .collect(),
                            ),
                        };
                    }
                }
                let arith = FractionFree::<BigInt>::new();
                let mut e = echelon_with(&arith, cols, rows).expect("no overflow");
                e.fully_reduce(&arith).expect("no overflow");
                Rref {
                    rows: to_scalars(e.rows),
                }
            }
        }
    }

    /// Pivot column -> row as a column map.
    fn pivots(&self) -> BTreeMap<usize, BTreeMap<usize, Scalar>> {
        self.rows
            .iter()
            .map(|r| (r[0].0, r.iter().cloned().collect()))
            .collect()
    }
}

/// Incremental span over a fixed ambient dimension. Used by the pipelines to
/// accumulate relation vectors and read off a complement basis.
pub struct SpanBuilder {
    field: FieldSpec,
    inner: SpanInner,
}

enum SpanInner {
    Mod(ModP, Echelon<u64>),
    Small(Echelon<i128>, Vec<SparseRow<i128>>),
    Big(Echelon<BigInt>),
}

impl SpanBuilder {
    pub fn new(field: FieldSpec, dim: usize) -> Self {
        let inner = if field.is_rational() {
            SpanInner::Small(Echelon::new(dim), Vec::new())
        } else {
            SpanInner::Mod(ModP(field.characteristic()), Echelon::new(dim))
        };
        SpanBuilder { field, inner }
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    /// Adds an integer vector (column-sorted or not; duplicates are summed).
    pub fn add(&mut self, vector: &[(usize, i64)]) {
        let mut acc: BTreeMap<usize, i64> = BTreeMap::new();
        for &(c, v) in vector {
            *acc.entry(c).or_insert(0) += v;
        }
        match &mut self.inner {
            SpanInner::Mod(arith, e) => {
                let p = arith.0 as i64;
                let row: SparseRow<u64> = acc
                    .into_iter()
                    .map(|(c, v)| (c, v.rem_euclid(p) as u64))
                    .filter(|e| e.1 != 0)
                    .collect();
                e.insert(arith, row).expect("no overflow mod p");
            }
            SpanInner::Small(e, history) => {
                let row: SparseRow<i128> = acc
                    .into_iter()
                    .filter(|e| e.1 != 0)
                    .map(|(c, v)| (c, v as i128))
                    .collect();
                let arith = FractionFree::<i128>::new();
                if e.insert(&arith, row.clone()).is_ok() {
                    history.push(row);
                    return;
                }
                // Replay everything on big integers.
                let big = FractionFree::<BigInt>::new();
                let mut eb = Echelon::new(e.pivot_of.len());
                for r in history.iter().chain(std::iter::once(&row)) {
                    eb.insert(
                        &big,
                        r.iter().map(|(c, v)| (*c, BigInt::from(*v))).collect(),
                    )
                    .expect("no overflow");
                }
                self.inner = SpanInner::Big(eb);
            }
            SpanInner::Big(e) => {
                let row = acc
                    .into_iter()
                    .filter(|e| e.1 != 0)
                    .map(|(c, v)| (c, BigInt::from(v)))
                    .collect();
                e.insert(&FractionFree::<BigInt>::new(), row)
                    .expect("no overflow");
            }
        }
    }

    pub fn rank(&self) -> usize {
        match &self.inner {
            SpanInner::Mod(_, e) => e.rank(),
            SpanInner::Small(e, _) => e.rank(),
            SpanInner::Big(e) => e.rank(),
        }
    }

    /// Columns that are leading columns of the echelon basis.
    pub fn pivot_columns(&self) -> Vec<usize> {
        match &self.inner {
            SpanInner::Mod(_, e) => e.pivot_columns(),
            SpanInner::Small(e, _) => e.pivot_columns(),
            SpanInner::Big(e) => e.pivot_columns(),
        }
    }

    /// Whether an integer vector lies in the current span.
    pub fn contains(&self, vector: &[(usize, i64)]) -> bool {
        let mut acc: BTreeMap<usize, i64> = BTreeMap::new();
        for &(c, v) in vector {
            *acc.entry(c).or_insert(0) += v;
        }
        match &self.inner {
            SpanInner::Mod(arith, e) => {
                let p = arith.0 as i64;
                let row: SparseRow<u64> = acc
                    .into_iter()
                    .map(|(c, v)| (c, v.rem_euclid(p) as u64))
                    .filter(|e| e.1 != 0)
                    .collect();
                e.reduce(arith, row).expect("no overflow").is_empty()
            }
            SpanInner::Small(e, history) => {
                let row: SparseRow<i128> = acc
                    .iter()
                    .filter(|e| *e.1 != 0)
                    .map(|(c, v)| (*c, *v as i128))
                    .collect();
                match e.reduce(&FractionFree::<i128>::new(), row) {
                    Ok(r) => r.is_empty(),
                    Err(_) => {
                        let big = FractionFree::<BigInt>::new();
                        let mut eb = Echelon::new(e.pivot_of.len());
                        for r in history {
                            eb.insert(
                                &big,
                                r.iter().map(|(c, v)| (*c, BigInt::from(*v))).collect(),
                            )
                            .expect("no overflow");
                        }
                        let row = acc
                            .into_iter()
                            .filter(|e| e.1 != 0)
                            .map(|(c, v)| (c, BigInt::from(v)))
                            .collect();
                        eb.reduce(&big, row).expect("no overflow").is_empty()
                    }
                }
            }
            SpanInner::Big(e) => {
                let row = acc
                    .into_iter()
                    .filter(|e| e.1 != 0)
                    .map(|(c, v)| (c, BigInt::from(v)))
                    .collect();
                e.reduce(&FractionFree::<BigInt>::new(), row)
                    .expect("no overflow")
                    .is_empty()
            }
        }
    }
}
