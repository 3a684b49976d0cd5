//! Canonical subspaces and exact linear algebra.
//!
//! A `Subspace` stores the reduced row echelon basis of a span inside a
//! fixed-dimension parent space. Two subspaces are equal as sets exactly when
//! their stored bases are identical, so set equality is a plain comparison.

use crate::error::{Error, Result};
use crate::scalar::{unit_vec, vec_is_zero, vec_sub_scaled, zero_vec, Field, Scalar};

/// Incremental reduced row echelon form. Rows are kept fully reduced with
/// pivots equal to one and pivot columns strictly increasing.
#[derive(Clone, Debug)]
pub struct RrefBuilder {
    field: Field,
    width: usize,
    rows: Vec<Vec<Scalar>>,
    pivots: Vec<usize>,
}

impl RrefBuilder {
    pub fn new(field: Field, width: usize) -> Self {
        RrefBuilder {
            field,
            width,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn rows(&self) -> &[Vec<Scalar>] {
        &self.rows
    }

    /// Reduce `row` against the accumulated rows and insert it when
    /// independent. Returns true if the rank grew.
    pub fn insert(&mut self, mut row: Vec<Scalar>) -> bool {
        assert_eq!(row.len(), self.width, "row width mismatch");
        self.reduce_in_place(&mut row);
        let Some(p) = row.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = row[p].inv();
        for x in row.iter_mut() {
            if !x.is_zero() {
                *x = x.mul(&inv);
            }
        }
        for r in 0..self.rows.len() {
            if !self.rows[r][p].is_zero() {
                let c = self.rows[r][p].clone();
                let base = row.clone();
                vec_sub_scaled(&mut self.rows[r], &base, &c);
            }
        }
        let pos = self
            .pivots
            .iter()
            .position(|&q| q > p)
            .unwrap_or(self.pivots.len());
        self.pivots.insert(pos, p);
        self.rows.insert(pos, row);
        true
    }

    pub fn reduce_in_place(&self, row: &mut Vec<Scalar>) {
        for (r, &p) in self.pivots.iter().enumerate() {
            if !row[p].is_zero() {
                let c = row[p].clone();
                vec_sub_scaled(row, &self.rows[r], &c);
            }
        }
    }

    pub fn into_subspace(self) -> Subspace {
        Subspace {
            field: self.field,
            parent_dim: self.width,
            rows: self.rows,
            pivots: self.pivots,
        }
    }
}

/// A subspace of `k^parent_dim` held in canonical RREF form.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Subspace {
    field: Field,
    parent_dim: usize,
    rows: Vec<Vec<Scalar>>,
    pivots: Vec<usize>,
}

impl Subspace {
    /// Canonical basis of the span of `vectors`.
    pub fn canonicalize(field: Field, parent_dim: usize, vectors: &[Vec<Scalar>]) -> Result<Self> {
        let mut b = RrefBuilder::new(field, parent_dim);
        for v in vectors {
            if v.len() != parent_dim {
                return Err(Error::Input(format!(
                    "row length {} does not match parent dimension {}",
                    v.len(),
                    parent_dim
                )));
            }
            b.insert(v.clone());
        }
        Ok(b.into_subspace())
    }

    pub fn zero(field: Field, parent_dim: usize) -> Self {
        Subspace {
            field,
            parent_dim,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(field: Field, parent_dim: usize) -> Self {
        let rows = (0..parent_dim)
            .map(|i| unit_vec(field, parent_dim, i))
            .collect();
        Subspace {
            field,
            parent_dim,
            rows,
            pivots: (0..parent_dim).collect(),
        }
    }

    pub fn span_of_units(field: Field, parent_dim: usize, indices: &[usize]) -> Self {
        let mut idx: Vec<usize> = indices.to_vec();
        idx.sort_unstable();
        idx.dedup();
        let rows: Vec<Vec<Scalar>> = idx
            .iter()
            .map(|&i| unit_vec(field, parent_dim, i))
            .collect();
        Subspace {
            field,
            parent_dim,
            rows,
            pivots: idx,
        }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn parent_dim(&self) -> usize {
        self.parent_dim
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn basis(&self) -> &[Vec<Scalar>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Columns without a pivot; they index the canonical complement.
    pub fn complement_indices(&self) -> Vec<usize> {
        let mut mask = vec![false; self.parent_dim];
        for &p in &self.pivots {
            mask[p] = true;
        }
        (0..self.parent_dim).filter(|&i| !mask[i]).collect()
    }

    /// Residual of `v` after subtracting its projection onto the basis.
    pub fn reduce(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.parent_dim, "vector width mismatch");
        let mut w = v.to_vec();
        for (r, &p) in self.pivots.iter().enumerate() {
            if !w[p].is_zero() {
                let c = w[p].clone();
                vec_sub_scaled(&mut w, &self.rows[r], &c);
            }
        }
        w
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        vec_is_zero(&self.reduce(v))
    }

    /// Coordinates of `v` in the RREF basis, or None when `v` lies outside.
    pub fn coords_of(&self, v: &[Scalar]) -> Option<Vec<Scalar>> {
        if !self.contains(v) {
            return None;
        }
        Some(self.pivots.iter().map(|&p| v[p].clone()).collect())
    }

    pub fn contains_space(&self, other: &Subspace) -> bool {
        other.rows.iter().all(|r| self.contains(r))
    }

    fn check_parent(&self, other: &Subspace) -> Result<()> {
        if self.parent_dim != other.parent_dim || self.field != other.field {
            return Err(Error::ParentMismatch(format!(
                "dim {} over {} vs dim {} over {}",
                self.parent_dim, self.field, other.parent_dim, other.field
            )));
        }
        Ok(())
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check_parent(other)?;
        let mut b = RrefBuilder::new(self.field, self.parent_dim);
        for r in self.rows.iter().chain(other.rows.iter()) {
            b.insert(r.clone());
        }
        Ok(b.into_subspace())
    }

    /// Intersection by the Zassenhaus block trick: run RREF on rows
    /// `[u | u]` for u in U and `[w | 0]` for w in W; rows whose left half
    /// vanishes carry an intersection basis in the right half.
    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        self.check_parent(other)?;
        let n = self.parent_dim;
        let mut b = RrefBuilder::new(self.field, 2 * n);
        for u in &self.rows {
            let mut row = u.clone();
            row.extend_from_slice(u);
            b.insert(row);
        }
        for w in &other.rows {
            let mut row = w.clone();
            row.extend(zero_vec(self.field, n));
            b.insert(row);
        }
        let mut inter = RrefBuilder::new(self.field, n);
        for row in b.rows() {
            if vec_is_zero(&row[..n]) {
                inter.insert(row[n..].to_vec());
            }
        }
        Ok(inter.into_subspace())
    }

    /// Annihilator in the dual coordinate space: all functionals vanishing on
    /// this subspace.
    pub fn annihilator(&self) -> Subspace {
        kernel_of_rows(self.field, &self.rows, self.parent_dim)
    }
}

/// Kernel of the linear map whose matrix has the given rows (each row is one
/// linear constraint over `width` unknowns).
pub fn kernel_of_rows(field: Field, rows: &[Vec<Scalar>], width: usize) -> Subspace {
    let mut b = RrefBuilder::new(field, width);
    for r in rows {
        b.insert(r.clone());
    }
    kernel_from_rref(field, &b)
}

/// Kernel from an already-accumulated RREF of the constraint matrix.
pub fn kernel_from_rref(field: Field, b: &RrefBuilder) -> Subspace {
    let width = b.width;
    let piv = b.pivots();
    let mut is_pivot = vec![usize::MAX; width];
    for (r, &p) in piv.iter().enumerate() {
        is_pivot[p] = r;
    }
    let mut out = RrefBuilder::new(field, width);
    for f in 0..width {
        if is_pivot[f] != usize::MAX {
            continue;
        }
        let mut v = zero_vec(field, width);
        v[f] = field.one();
        for (r, &p) in piv.iter().enumerate() {
            let c = &b.rows()[r][f];
            if !c.is_zero() {
                v[p] = c.neg();
            }
        }
        out.insert(v);
    }
    out.into_subspace()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::vec_add_scaled;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn q() -> Field {
        Field::Q
    }

    fn v(entries: &[i64]) -> Vec<Scalar> {
        entries.iter().map(|&e| q().int(e)).collect()
    }

    #[test]
    fn canonicalize_dependent_rows() {
        let s = Subspace::canonicalize(q(), 2, &[v(&[1, 1]), v(&[2, 2])]).unwrap();
        assert_eq!(s.dim(), 1);
        assert_eq!(s.basis()[0], v(&[1, 1]));
    }

    #[test]
    fn canonicalize_empty_is_zero_subspace() {
        let s = Subspace::canonicalize(q(), 3, &[]).unwrap();
        assert_eq!(s.dim(), 0);
    }

    #[test]
    fn canonicalize_full_space() {
        let s = Subspace::canonicalize(q(), 2, &[v(&[1, 0]), v(&[1, 1])]).unwrap();
        assert_eq!(s, Subspace::full(q(), 2));
    }

    #[test]
    fn canonicalize_rejects_bad_row_length() {
        assert!(Subspace::canonicalize(q(), 3, &[v(&[1, 0])]).is_err());
    }

    #[test]
    fn sum_examples() {
        let e1 = Subspace::span_of_units(q(), 3, &[0]);
        let e2 = Subspace::span_of_units(q(), 3, &[1]);
        assert_eq!(
            e1.sum(&e2).unwrap(),
            Subspace::span_of_units(q(), 3, &[0, 1])
        );
        assert_eq!(e1.sum(&e1).unwrap(), e1);
        assert_eq!(e1.sum(&Subspace::zero(q(), 3)).unwrap(), e1);
        assert!(e1.sum(&Subspace::zero(q(), 2)).is_err());
    }

    #[test]
    fn intersect_examples() {
        let u = Subspace::span_of_units(q(), 3, &[0, 1]);
        let w = Subspace::span_of_units(q(), 3, &[1, 2]);
        assert_eq!(
            u.intersect(&w).unwrap(),
            Subspace::span_of_units(q(), 3, &[1])
        );
        assert_eq!(u.intersect(&u).unwrap(), u);
    }

    /// Independent membership oracle: fresh Gaussian elimination over a raw
    /// copy of the generators, separate from Subspace's own reduction path.
    fn bruteforce_member(gens: &[Vec<Scalar>], target: &[Scalar]) -> bool {
        let mut rows: Vec<Vec<Scalar>> = gens.to_vec();
        let mut t = target.to_vec();
        let width = t.len();
        let mut used = vec![false; rows.len()];
        for col in 0..width {
            let Some(r) = (0..rows.len()).find(|&r| !used[r] && !rows[r][col].is_zero()) else {
                continue;
            };
            used[r] = true;
            let pivot_row = rows[r].clone();
            let pivot = pivot_row[col].clone();
            for (j, row) in rows.iter_mut().enumerate() {
                if j != r && !row[col].is_zero() {
                    let c = row[col].div(&pivot);
                    vec_sub_scaled(row, &pivot_row, &c);
                }
            }
            if !t[col].is_zero() {
                let c = t[col].div(&pivot);
                vec_sub_scaled(&mut t, &pivot_row, &c);
            }
        }
        vec_is_zero(&t)
    }

    #[test]
    fn random_intersections_obey_membership_and_dimension_identity() {
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        for _ in 0..100 {
            let n = rng.gen_range(1..=8);
            let gen_space = |rng: &mut ChaCha8Rng| -> Vec<Vec<Scalar>> {
                let k = rng.gen_range(0..=n);
                (0..k)
                    .map(|_| (0..n).map(|_| q().int(rng.gen_range(-3..=3))).collect())
                    .collect()
            };
            let gu = gen_space(&mut rng);
            let gw = gen_space(&mut rng);
            let u = Subspace::canonicalize(q(), n, &gu).unwrap();
            let w = Subspace::canonicalize(q(), n, &gw).unwrap();
            let i = u.intersect(&w).unwrap();
            let s = u.sum(&w).unwrap();
            assert_eq!(u.dim() + w.dim(), s.dim() + i.dim());
            for b in i.basis() {
                assert!(bruteforce_member(&gu, b) || gu.is_empty() && vec_is_zero(b));
                assert!(bruteforce_member(&gw, b) || gw.is_empty() && vec_is_zero(b));
            }
            assert!(u.contains_space(&i));
            assert!(w.contains_space(&i));
        }
    }

    #[test]
    fn kernel_annihilator_dimensions() {
        let u = Subspace::canonicalize(q(), 4, &[v(&[1, 2, 0, 0]), v(&[0, 0, 1, 1])]).unwrap();
        let ann = u.annihilator();
        assert_eq!(ann.dim(), 2);
        for f in ann.basis() {
            for b in u.basis() {
                assert!(crate::scalar::vec_dot(f, b).is_zero());
            }
        }
    }

    proptest! {
        #[test]
        fn canonicalize_is_idempotent(rows in proptest::collection::vec(
            proptest::collection::vec(-5i64..=5, 4), 0..5)) {
            let rows: Vec<Vec<Scalar>> = rows.iter().map(|r| v(r)).collect();
            let s1 = Subspace::canonicalize(q(), 4, &rows).unwrap();
            let s2 = Subspace::canonicalize(q(), 4, s1.basis()).unwrap();
            prop_assert_eq!(s1, s2);
        }

        #[test]
        fn membership_of_random_combinations(rows in proptest::collection::vec(
            proptest::collection::vec(-5i64..=5, 5), 1..4),
            coeffs in proptest::collection::vec(-4i64..=4, 4)) {
            let rows: Vec<Vec<Scalar>> = rows.iter().map(|r| v(r)).collect();
            let s = Subspace::canonicalize(q(), 5, &rows).unwrap();
            let mut combo = zero_vec(q(), 5);
            for (r, c) in rows.iter().zip(&coeffs) {
                vec_add_scaled(&mut combo, r, &q().int(*c));
            }
            prop_assert!(s.contains(&combo));
        }
    }
}
