//! Sparse row-echelon engine.
//!
//! Rows are sparse vectors sorted by column. Rows are inserted one at a time and
//! reduced against existing pivot rows until their leading column is free, at
//! which point they become a new pivot row. Over ℚ the rows are kept integral
//! (cleared denominators) and combined fraction-free, with the row content
//! divided out after each step. The integer engine first runs on `i128` and is
//! restarted on `BigInt` if any intermediate overflows.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::field::pow_mod;

pub(crate) type SparseRow<E> = Vec<(usize, E)>;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct Overflow;

pub(crate) trait Arith {
    type E: Clone + std::fmt::Debug;

    /// Cancels the entry of `row` at `col` using `piv`, whose entry at `col` is nonzero.
    fn eliminate(
        &self,
        row: &mut SparseRow<Self::E>,
        col: usize,
        piv: &SparseRow<Self::E>,
    ) -> Result<(), Overflow>;

    /// Canonical scaling of a new pivot row.
    fn normalize(&self, row: &mut SparseRow<Self::E>) -> Result<(), Overflow>;
}

fn entry_at<E>(row: &[(usize, E)], col: usize) -> Option<&E> {
    row.binary_search_by_key(&col, |e| e.0)
        .ok()
        .map(|i| &row[i].1)
}

/// Merges `a * row + b * piv` into a fresh row using a caller-supplied combine.
fn merge<E: Clone, F>(
    row: &SparseRow<E>,
    piv: &SparseRow<E>,
    mut combine: F,
) -> Result<SparseRow<E>, Overflow>
where
    F: FnMut(Option<&E>, Option<&E>) -> Result<Option<E>, Overflow>,
{
    let mut out = Vec::with_capacity(row.len() + piv.len());
    let (mut i, mut j) = (0, 0);
    while i < row.len() || j < piv.len() {
        let (col, v) = match (row.get(i), piv.get(j)) {
            (Some(r), Some(p)) if r.0 == p.0 => {
                i += 1;
                j += 1;
                (r.0, combine(Some(&r.1), Some(&p.1))?)
            }
            (Some(r), Some(p)) if r.0 < p.0 => {
                i += 1;
                (r.0, combine(Some(&r.1), None)?)
            }
            (Some(r), None) => {
                i += 1;
                (r.0, combine(Some(&r.1), None)?)
            }
            (_, Some(p)) => {
                j += 1;
                (p.0, combine(None, Some(&p.1))?)
            }
            (None, None) => unreachable!(),
        };
        if let Some(v) = v {
            out.push((col, v));
        }
    }
    Ok(out)
}

/// Arithmetic in 𝔽ₚ with `u64` residues.
pub(crate) struct ModP(pub u64);

impl Arith for ModP {
    type E = u64;

    fn eliminate(
        &self,
        row: &mut SparseRow<u64>,
        col: usize,
        piv: &SparseRow<u64>,
    ) -> Result<(), Overflow> {
        let p = self.0;
        let r = *entry_at(row, col).expect("entry to eliminate");
        let pv = *entry_at(piv, col).expect("pivot entry");
        // row <- row - (r / pv) * piv
        let factor = r * pow_mod(pv, p - 2, p) % p;
        let neg = (p - factor) % p;
        *row = merge(row, piv, |a, b| {
            let v = (a.copied().unwrap_or(0) + neg * b.copied().unwrap_or(0)) % p;
            Ok((v != 0).then_some(v))
        })?;
        Ok(())
    }

    fn normalize(&self, row: &mut SparseRow<u64>) -> Result<(), Overflow> {
        let p = self.0;
        if let Some(&(_, lead)) = row.first() {
            let inv = pow_mod(lead, p - 2, p);
            for e in row.iter_mut() {
                e.1 = e.1 * inv % p;
            }
        }
        Ok(())
    }
}

/// Integer arithmetic with the operations the fraction-free engine needs.
pub(crate) trait IntLike: Clone + std::fmt::Debug + Sized {
    fn zero() -> Self;
    fn is_zero(&self) -> bool;
    fn is_negative(&self) -> bool;
    fn gcd(&self, other: &Self) -> Self;
    fn checked_mul(&self, other: &Self) -> Option<Self>;
    fn checked_sub(&self, other: &Self) -> Option<Self>;
    fn div_exact(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn is_one(&self) -> bool;
}

impl IntLike for i128 {
    fn zero() -> Self {
        0
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn is_negative(&self) -> bool {
        *self < 0
    }
    fn gcd(&self, other: &Self) -> Self {
        Integer::gcd(self, other)
    }
    fn checked_mul(&self, other: &Self) -> Option<Self> {
        i128::checked_mul(*self, *other)
    }
    fn checked_sub(&self, other: &Self) -> Option<Self> {
        i128::checked_sub(*self, *other)
    }
    fn div_exact(&self, other: &Self) -> Self {
        self / other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn is_one(&self) -> bool {
        *self == 1
    }
}

impl IntLike for BigInt {
    fn zero() -> Self {
        Zero::zero()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_negative(&self) -> bool {
        Signed::is_negative(self)
    }
    fn gcd(&self, other: &Self) -> Self {
        Integer::gcd(self, other)
    }
    fn checked_mul(&self, other: &Self) -> Option<Self> {
        Some(self * other)
    }
    fn checked_sub(&self, other: &Self) -> Option<Self> {
        Some(self - other)
    }
    fn div_exact(&self, other: &Self) -> Self {
        self / other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn is_one(&self) -> bool {
        One::is_one(self)
    }
}

/// Fraction-free elimination over ℤ (equivalently ℚ after clearing denominators).
pub(crate) struct FractionFree<I>(std::marker::PhantomData<I>);

impl<I> FractionFree<I> {
    pub(crate) fn new() -> Self {
        FractionFree(std::marker::PhantomData)
    }
}

impl<I: IntLike> Arith for FractionFree<I> {
    type E = I;

    fn eliminate(
        &self,
        row: &mut SparseRow<I>,
        col: usize,
        piv: &SparseRow<I>,
    ) -> Result<(), Overflow> {
        let r = entry_at(row, col).expect("entry to eliminate").clone();
        let pv = entry_at(piv, col).expect("pivot entry").clone();
        let g = r.gcd(&pv);
        let a = pv.div_exact(&g);
        let b = r.div_exact(&g);
        // row <- a * row - b * piv
        let merged = merge(row, piv, |x, y| {
            let lhs = match x {
                Some(x) => x.checked_mul(&a).ok_or(Overflow)?,
                None => I::zero(),
            };
            let rhs = match y {
                Some(y) => y.checked_mul(&b).ok_or(Overflow)?,
                None => I::zero(),
            };
            let v = lhs.checked_sub(&rhs).ok_or(Overflow)?;
            Ok((!v.is_zero()).then_some(v))
        })?;
        *row = merged;
        self.normalize(row)
    }

    fn normalize(&self, row: &mut SparseRow<I>) -> Result<(), Overflow> {
        let Some(first) = row.first() else {
            return Ok(());
        };
        let mut g = first.1.clone();
        for e in row.iter().skip(1) {
            if g.is_one() {
                break;
            }
            g = g.gcd(&e.1);
        }
        let g = if g.is_negative() { g.neg() } else { g };
        let flip = row[0].1.is_negative();
        if g.is_one() && !flip {
            return Ok(());
        }
        for e in row.iter_mut() {
            let mut v = e.1.div_exact(&g);
            if flip {
                v = v.neg();
            }
            e.1 = v;
        }
        Ok(())
    }
}

/// A row-echelon basis of the span of the inserted rows.
#[derive(Debug, Clone)]
pub(crate) struct Echelon<E> {
    cols: usize,
    /// pivot rows, each with a distinct leading column
    pub(crate) rows: Vec<SparseRow<E>>,
    /// column -> index into `rows`
    pub(crate) pivot_of: Vec<Option<usize>>,
}

impl<E: Clone + std::fmt::Debug> Echelon<E> {
    pub(crate) fn new(cols: usize) -> Self {
        Echelon {
            cols,
            rows: Vec::new(),
            pivot_of: vec![None; cols],
        }
    }

    pub(crate) fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `row` by the current pivots. Returns the reduced remainder.
    pub(crate) fn reduce<A: Arith<E = E>>(
        &self,
        arith: &A,
        mut row: SparseRow<E>,
    ) -> Result<SparseRow<E>, Overflow> {
        while let Some(&(c, _)) = row.first() {
            match self.pivot_of[c] {
                Some(pi) => arith.eliminate(&mut row, c, &self.rows[pi])?,
                None => break,
            }
        }
        Ok(row)
    }

    /// Inserts a row; returns `true` if it increased the rank.
    pub(crate) fn insert<A: Arith<E = E>>(
        &mut self,
        arith: &A,
        row: SparseRow<E>,
    ) -> Result<bool, Overflow> {
        let mut row = self.reduce(arith, row)?;
        if row.is_empty() {
            return Ok(false);
        }
        arith.normalize(&mut row)?;
        let lead = row[0].0;
        debug_assert!(lead < self.cols);
        self.pivot_of[lead] = Some(self.rows.len());
        self.rows.push(row);
        Ok(true)
    }

    /// Back-substitutes so that every pivot column is zero outside its pivot row.
    pub(crate) fn fully_reduce<A: Arith<E = E>>(&mut self, arith: &A) -> Result<(), Overflow> {
        let mut order: Vec<usize> = (0..self.rows.len()).collect();
        order.sort_by_key(|&i| std::cmp::Reverse(self.rows[i][0].0));
        for &i in &order {
            loop {
                let target = self.rows[i]
                    .iter()
                    .skip(1)
                    .map(|e| e.0)
                    .find(|&c| self.pivot_of[c].is_some());
                let Some(c) = target else { break };
                let pi = self.pivot_of[c].unwrap();
                let piv = self.rows[pi].clone();
                let mut row = std::mem::take(&mut self.rows[i]);
                arith.eliminate(&mut row, c, &piv)?;
                self.rows[i] = row;
            }
        }
        Ok(())
    }

    /// Pivot columns in increasing order.
    pub(crate) fn pivot_columns(&self) -> Vec<usize> {
        (0..self.cols)
            .filter(|&c| self.pivot_of[c].is_some())
            .collect()
    }
}

pub(crate) fn i128_row(row: &[(usize, BigInt)]) -> Option<SparseRow<i128>> {
    row.iter()
        .map(|(c, v)| v.to_i128().map(|v| (*c, v)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fraction_free_keeps_rows_primitive() {
        let ff = FractionFree::<i128>::new();
        let mut e = Echelon::new(3);
        assert!(e.insert(&ff, vec![(0, 4), (1, 6)]).unwrap());
        assert_eq!(e.rows[0], vec![(0, 2), (1, 3)]);
        assert!(e.insert(&ff, vec![(0, 2), (2, 5)]).unwrap());
        assert_eq!(e.rows[1], vec![(1, 3), (2, -5)]);
        assert!(!e.insert(&ff, vec![(0, 4), (1, 3), (2, 5)]).unwrap());
        assert_eq!(e.rank(), 2);
    }

    #[test]
    fn mod_p_rank_of_dependent_rows() {
        let m = ModP(2);
        let mut e = Echelon::new(2);
        assert!(!e.insert(&m, vec![]).unwrap());
        assert!(e.insert(&m, vec![(0, 1), (1, 1)]).unwrap());
        assert!(!e.insert(&m, vec![(0, 1), (1, 1)]).unwrap());
        assert_eq!(e.rank(), 1);
    }

    #[test]
    fn i128_overflow_is_detected() {
        let ff = FractionFree::<i128>::new();
        let big = i128::MAX / 2;
        let mut e = Echelon::new(2);
        e.insert(&ff, vec![(0, big - 1), (1, 1)]).unwrap();
        let r = e.insert(&ff, vec![(0, big), (1, big - 7)]);
        assert_eq!(r, Err(Overflow));
    }
}
