//! The `HopfAlgebra` data type: sparse structure-constant tensors over an
//! exact field, axiom verification, duals, morphisms and (co)semisimplicity.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::groups::FiniteGroup;
use crate::matched_pair::MatchedPairData;
use crate::matrix::Matrix;
use crate::scalar::{unit_vec, zero_vec, Field, Scalar};
use crate::subspace::{kernel_of_rows, RrefBuilder, Subspace};

/// Shared handle; every constructed algebra is immutable.
pub type Hopf = Arc<HopfAlgebra>;

/// Provenance tag propagated through constructions; the equivalence check on
/// composition factors keys off it.
#[derive(Clone, Debug)]
pub enum FactorTag {
    GroupAlgebra(FiniteGroup),
    DualGroupAlgebra(FiniteGroup),
    AbelianExtension(Arc<MatchedPairData>),
    Generic,
}

impl FactorTag {
    pub fn dual(&self) -> FactorTag {
        match self {
            FactorTag::GroupAlgebra(g) => FactorTag::DualGroupAlgebra(g.clone()),
            FactorTag::DualGroupAlgebra(g) => FactorTag::GroupAlgebra(g.clone()),
            _ => FactorTag::Generic,
        }
    }

    pub fn describe(&self) -> String {
        match self {
            FactorTag::GroupAlgebra(g) => format!("group_algebra({})", g.canonical_id()),
            FactorTag::DualGroupAlgebra(g) => format!("dual_group_algebra({})", g.canonical_id()),
            FactorTag::AbelianExtension(mp) => format!(
                "abelian_extension({},{})",
                mp.gamma.canonical_id(),
                mp.f.canonical_id()
            ),
            FactorTag::Generic => "generic".into(),
        }
    }
}

/// A finite dimensional Hopf algebra presented by structure constants.
///
/// `mult` is indexed by `i * dim + j` and lists `(k, c)` with
/// `e_i e_j = sum c e_k`; `comult[i]` lists `(j, k, c)` with
/// `Delta(e_i) = sum c e_j (x) e_k`; `antipode_images[j]` is the dense vector
/// `S(e_j)`. Entry lists are sorted and duplicate-free, so two presentations
/// are tensor-identical exactly when the stored fields compare equal.
#[derive(Clone, Debug)]
pub struct HopfAlgebra {
    field: Field,
    dim: usize,
    basis_labels: Vec<String>,
    mult: Vec<Vec<(usize, Scalar)>>,
    unit: Vec<Scalar>,
    comult: Vec<Vec<(usize, usize, Scalar)>>,
    counit: Vec<Scalar>,
    antipode_images: Vec<Vec<Scalar>>,
    provenance: FactorTag,
}

impl HopfAlgebra {
    #[allow(clippy::too_many_arguments)]
    pub fn from_parts(
        field: Field,
        basis_labels: Vec<String>,
        mult_entries: Vec<(usize, usize, usize, Scalar)>,
        unit: Vec<Scalar>,
        comult_entries: Vec<(usize, usize, usize, Scalar)>,
        counit: Vec<Scalar>,
        antipode_entries: Vec<(usize, usize, Scalar)>,
        provenance: FactorTag,
    ) -> Result<Hopf> {
        field.validate()?;
        let dim = basis_labels.len();
        if dim == 0 {
            return Err(Error::Input("dimension must be positive".into()));
        }
        if unit.len() != dim || counit.len() != dim {
            return Err(Error::Input("unit/counit length mismatch".into()));
        }
        let mut mult: Vec<BTreeMap<usize, Scalar>> = vec![BTreeMap::new(); dim * dim];
        for (i, j, k, c) in mult_entries {
            if i >= dim || j >= dim || k >= dim {
                return Err(Error::Input(format!("mult index ({i},{j},{k}) out of range")));
            }
            if c.field() != field {
                return Err(Error::Input("mult scalar field mismatch".into()));
            }
            let cell = mult[i * dim + j].entry(k).or_insert_with(|| field.zero());
            *cell = cell.add(&c);
        }
        let mut comult: Vec<BTreeMap<(usize, usize), Scalar>> = vec![BTreeMap::new(); dim];
        for (i, j, k, c) in comult_entries {
            if i >= dim || j >= dim || k >= dim {
                return Err(Error::Input(format!(
                    "comult index ({i},{j},{k}) out of range"
                )));
            }
            if c.field() != field {
                return Err(Error::Input("comult scalar field mismatch".into()));
            }
            let cell = comult[i].entry((j, k)).or_insert_with(|| field.zero());
            *cell = cell.add(&c);
        }
        let mut antipode_images = vec![zero_vec(field, dim); dim];
        for (i, j, c) in antipode_entries {
            if i >= dim || j >= dim {
                return Err(Error::Input(format!("antipode index ({i},{j}) out of range")));
            }
            if c.field() != field {
                return Err(Error::Input("antipode scalar field mismatch".into()));
            }
            antipode_images[j][i] = antipode_images[j][i].add(&c);
        }
        let mult = mult
            .into_iter()
            .map(|m| m.into_iter().filter(|(_, c)| !c.is_zero()).collect())
            .collect();
        let comult = comult
            .into_iter()
            .map(|m| {
                m.into_iter()
                    .filter(|(_, c)| !c.is_zero())
                    .map(|((j, k), c)| (j, k, c))
                    .collect()
            })
            .collect();
        Ok(Arc::new(HopfAlgebra {
            field,
            dim,
            basis_labels,
            mult,
            unit,
            comult,
            counit,
            antipode_images,
            provenance,
        }))
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn basis_labels(&self) -> &[String] {
        &self.basis_labels
    }

    pub fn provenance(&self) -> &FactorTag {
        &self.provenance
    }

    pub fn with_provenance(&self, tag: FactorTag) -> Hopf {
        let mut h = self.clone();
        h.provenance = tag;
        Arc::new(h)
    }

    pub fn unit_vector(&self) -> &[Scalar] {
        &self.unit
    }

    pub fn counit_row(&self) -> &[Scalar] {
        &self.counit
    }

    pub fn mult_row(&self, i: usize, j: usize) -> &[(usize, Scalar)] {
        &self.mult[i * self.dim + j]
    }

    pub fn comult_row(&self, i: usize) -> &[(usize, usize, Scalar)] {
        &self.comult[i]
    }

    pub fn antipode_image(&self, j: usize) -> &[Scalar] {
        &self.antipode_images[j]
    }

    pub fn mult_entries(&self) -> Vec<(usize, usize, usize, Scalar)> {
        let mut out = Vec::new();
        for i in 0..self.dim {
            for j in 0..self.dim {
                for (k, c) in self.mult_row(i, j) {
                    out.push((i, j, *k, c.clone()));
                }
            }
        }
        out
    }

    pub fn comult_entries(&self) -> Vec<(usize, usize, usize, Scalar)> {
        let mut out = Vec::new();
        for (i, row) in self.comult.iter().enumerate() {
            for (j, k, c) in row {
                out.push((i, *j, *k, c.clone()));
            }
        }
        out
    }

    pub fn antipode_entries(&self) -> Vec<(usize, usize, Scalar)> {
        let mut out = Vec::new();
        for j in 0..self.dim {
            for (i, c) in self.antipode_images[j].iter().enumerate() {
                if !c.is_zero() {
                    out.push((i, j, c.clone()));
                }
            }
        }
        out.sort_by_key(|(i, j, _)| (*i, *j));
        out
    }

    /// Tensor-level equality: identical structure constants, ignoring labels
    /// and provenance.
    pub fn tensor_eq(&self, other: &HopfAlgebra) -> bool {
        self.field == other.field
            && self.dim == other.dim
            && self.mult == other.mult
            && self.unit == other.unit
            && self.comult == other.comult
            && self.counit == other.counit
            && self.antipode_images == other.antipode_images
    }

    // -- evaluation -----------------------------------------------------

    pub fn mul_vec(&self, a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
        let mut out = zero_vec(self.field, self.dim);
        for (i, ai) in a.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            for (j, bj) in b.iter().enumerate() {
                if bj.is_zero() {
                    continue;
                }
                let cij = ai.mul(bj);
                for (k, c) in self.mult_row(i, j) {
                    out[*k] = out[*k].add(&cij.mul(c));
                }
            }
        }
        out
    }

    pub fn mul_basis_vec(&self, i: usize, b: &[Scalar]) -> Vec<Scalar> {
        let mut out = zero_vec(self.field, self.dim);
        for (j, bj) in b.iter().enumerate() {
            if bj.is_zero() {
                continue;
            }
            for (k, c) in self.mult_row(i, j) {
                out[*k] = out[*k].add(&bj.mul(c));
            }
        }
        out
    }

    pub fn mul_vec_basis(&self, a: &[Scalar], j: usize) -> Vec<Scalar> {
        let mut out = zero_vec(self.field, self.dim);
        for (i, ai) in a.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            for (k, c) in self.mult_row(i, j) {
                out[*k] = out[*k].add(&ai.mul(c));
            }
        }
        out
    }

    /// Coefficient map of `Delta(v)` keyed by `(j, k)`.
    pub fn comult_vec(&self, v: &[Scalar]) -> BTreeMap<(usize, usize), Scalar> {
        let mut out: BTreeMap<(usize, usize), Scalar> = BTreeMap::new();
        for (i, vi) in v.iter().enumerate() {
            if vi.is_zero() {
                continue;
            }
            for (j, k, c) in self.comult_row(i) {
                add_to2(&mut out, (*j, *k), vi.mul(c));
            }
        }
        out
    }

    pub fn antipode_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        let mut out = zero_vec(self.field, self.dim);
        for (j, vj) in v.iter().enumerate() {
            if vj.is_zero() {
                continue;
            }
            for (i, c) in self.antipode_images[j].iter().enumerate() {
                if !c.is_zero() {
                    out[i] = out[i].add(&vj.mul(c));
                }
            }
        }
        out
    }

    pub fn counit_vec(&self, v: &[Scalar]) -> Scalar {
        let mut acc = self.field.zero();
        for (i, vi) in v.iter().enumerate() {
            if !vi.is_zero() && !self.counit[i].is_zero() {
                acc = acc.add(&vi.mul(&self.counit[i]));
            }
        }
        acc
    }

    pub fn antipode_matrix(&self) -> Matrix {
        Matrix::from_cols(self.field, self.dim, self.antipode_images.clone())
            .expect("antipode images are square")
    }

    /// Basis indices carrying grouplike elements.
    pub fn grouplike_basis_indices(&self) -> Vec<usize> {
        (0..self.dim)
            .filter(|&i| {
                if !self.counit[i].is_one() {
                    return false;
                }
                let row = self.comult_row(i);
                row.len() == 1 && row[0].0 == i && row[0].1 == i && row[0].2.is_one()
            })
            .collect()
    }

    pub fn is_commutative(&self) -> bool {
        (0..self.dim).all(|i| (0..self.dim).all(|j| self.mult_row(i, j) == self.mult_row(j, i)))
    }

    pub fn is_cocommutative(&self) -> bool {
        (0..self.dim).all(|i| {
            let mut flipped: Vec<(usize, usize, Scalar)> = self
                .comult_row(i)
                .iter()
                .map(|(j, k, c)| (*k, *j, c.clone()))
                .collect();
            flipped.sort_by(|a, b| (a.0, a.1).cmp(&(b.0, b.1)));
            flipped == self.comult_row(i)
        })
    }

    // -- dual -------------------------------------------------------------

    /// The dual Hopf algebra on the dual basis: multiplication is the
    /// transpose of comultiplication and vice versa; the antipode transposes.
    /// Taking the dual twice reproduces the original tensors exactly.
    pub fn dual(&self) -> Hopf {
        let n = self.dim;
        let mut mult_entries = Vec::new();
        for (k, row) in self.comult.iter().enumerate() {
            for (a, b, c) in row {
                mult_entries.push((*a, *b, k, c.clone()));
            }
        }
        let mut comult_entries = Vec::new();
        for i in 0..n {
            for j in 0..n {
                for (k, c) in self.mult_row(i, j) {
                    comult_entries.push((*k, i, j, c.clone()));
                }
            }
        }
        let mut antipode_entries = Vec::new();
        for j in 0..n {
            for (i, c) in self.antipode_images[j].iter().enumerate() {
                if !c.is_zero() {
                    // <S*(f_a), e_b> = <f_a, S(e_b)>
                    antipode_entries.push((j, i, c.clone()));
                }
            }
        }
        let labels = self
            .basis_labels
            .iter()
            .map(|l| format!("{l}*"))
            .collect();
        HopfAlgebra::from_parts(
            self.field,
            labels,
            mult_entries,
            self.counit.clone(),
            comult_entries,
            self.unit.clone(),
            antipode_entries,
            self.provenance.dual(),
        )
        .expect("dual of a well-shaped algebra is well-shaped")
    }

    // -- semisimplicity ----------------------------------------------------

    /// Gram matrix of the trace form `T(a, b) = trace(L_{ab})` of the left
    /// regular representation.
    fn trace_form(&self) -> Result<Vec<Vec<Scalar>>> {
        if self.field != Field::Q {
            return Err(Error::Unsupported(
                "semisimplicity test requires characteristic zero".into(),
            ));
        }
        // tr[s] = trace of left multiplication by e_s
        let mut tr = zero_vec(self.field, self.dim);
        for s in 0..self.dim {
            for t in 0..self.dim {
                for (k, c) in self.mult_row(s, t) {
                    if *k == t {
                        tr[s] = tr[s].add(c);
                    }
                }
            }
        }
        let mut gram = vec![zero_vec(self.field, self.dim); self.dim];
        for i in 0..self.dim {
            for j in 0..self.dim {
                let mut acc = self.field.zero();
                for (s, c) in self.mult_row(i, j) {
                    if !tr[*s].is_zero() {
                        acc = acc.add(&c.mul(&tr[*s]));
                    }
                }
                gram[i][j] = acc;
            }
        }
        Ok(gram)
    }

    /// Nondegeneracy of the trace form; valid in characteristic zero.
    pub fn is_semisimple(&self) -> Result<bool> {
        Ok(self.radical()?.dim() == 0)
    }

    /// The Jacobson radical as the kernel of the trace form.
    pub fn radical(&self) -> Result<Subspace> {
        let gram = self.trace_form()?;
        Ok(kernel_of_rows(self.field, &gram, self.dim))
    }

    pub fn is_cosemisimple(&self) -> Result<bool> {
        self.dual().is_semisimple()
    }

    // -- axiom verification -------------------------------------------------

    pub fn verify_axioms(&self) -> AxiomReport {
        let mut checks = Vec::new();
        checks.push(AxiomCheck {
            axiom: Axiom::Associativity,
            witness: self.check_associativity(),
        });
        checks.push(AxiomCheck {
            axiom: Axiom::UnitLaw,
            witness: self.check_unit_law(),
        });
        checks.push(AxiomCheck {
            axiom: Axiom::Coassociativity,
            witness: self.check_coassociativity(),
        });
        checks.push(AxiomCheck {
            axiom: Axiom::CounitLaw,
            witness: self.check_counit_law(),
        });
        checks.push(AxiomCheck {
            axiom: Axiom::ComultMultiplicative,
            witness: self.check_comult_multiplicative(),
        });
        checks.push(AxiomCheck {
            axiom: Axiom::ComultUnital,
            witness: self.check_comult_unital(),
        });
        checks.push(AxiomCheck {
            axiom: Axiom::CounitMultiplicative,
            witness: self.check_counit_multiplicative(),
        });
        checks.push(AxiomCheck {
            axiom: Axiom::CounitUnital,
            witness: self.check_counit_unital(),
        });
        checks.push(AxiomCheck {
            axiom: Axiom::AntipodeLeft,
            witness: self.check_antipode(true),
        });
        checks.push(AxiomCheck {
            axiom: Axiom::AntipodeRight,
            witness: self.check_antipode(false),
        });
        checks.push(AxiomCheck {
            axiom: Axiom::AntipodeBijective,
            witness: if self.antipode_matrix().rank() == self.dim {
                None
            } else {
                Some(vec![])
            },
        });
        AxiomReport { checks }
    }

    fn check_associativity(&self) -> Option<Vec<usize>> {
        let n = self.dim;
        for i in 0..n {
            for j in 0..n {
                let row_ij = self.mult_row(i, j);
                for k in 0..n {
                    let mut lhs: BTreeMap<usize, Scalar> = BTreeMap::new();
                    for (t, c) in row_ij {
                        for (u, c2) in self.mult_row(*t, k) {
                            add_to(&mut lhs, *u, c.mul(c2));
                        }
                    }
                    let mut rhs: BTreeMap<usize, Scalar> = BTreeMap::new();
                    for (t, c) in self.mult_row(j, k) {
                        for (u, c2) in self.mult_row(i, *t) {
                            add_to(&mut rhs, *u, c.mul(c2));
                        }
                    }
                    if lhs != rhs {
                        return Some(vec![i, j, k]);
                    }
                }
            }
        }
        None
    }

    fn check_unit_law(&self) -> Option<Vec<usize>> {
        for i in 0..self.dim {
            let e = unit_vec(self.field, self.dim, i);
            if self.mul_vec(&self.unit, &e) != e || self.mul_vec(&e, &self.unit) != e {
                return Some(vec![i]);
            }
        }
        None
    }

    fn check_coassociativity(&self) -> Option<Vec<usize>> {
        for i in 0..self.dim {
            let mut lhs: BTreeMap<(usize, usize, usize), Scalar> = BTreeMap::new();
            let mut rhs: BTreeMap<(usize, usize, usize), Scalar> = BTreeMap::new();
            for (j, k, c) in self.comult_row(i) {
                for (a, b, c2) in self.comult_row(*j) {
                    add_to3(&mut lhs, (*a, *b, *k), c.mul(c2));
                }
                for (a, b, c2) in self.comult_row(*k) {
                    add_to3(&mut rhs, (*j, *a, *b), c.mul(c2));
                }
            }
            if lhs != rhs {
                return Some(vec![i]);
            }
        }
        None
    }

    fn check_counit_law(&self) -> Option<Vec<usize>> {
        for i in 0..self.dim {
            let mut left = zero_vec(self.field, self.dim);
            let mut right = zero_vec(self.field, self.dim);
            for (j, k, c) in self.comult_row(i) {
                if !self.counit[*j].is_zero() {
                    left[*k] = left[*k].add(&c.mul(&self.counit[*j]));
                }
                if !self.counit[*k].is_zero() {
                    right[*j] = right[*j].add(&c.mul(&self.counit[*k]));
                }
            }
            let e = unit_vec(self.field, self.dim, i);
            if left != e || right != e {
                return Some(vec![i]);
            }
        }
        None
    }

    fn check_comult_multiplicative(&self) -> Option<Vec<usize>> {
        for i in 0..self.dim {
            for j in 0..self.dim {
                let mut lhs: BTreeMap<(usize, usize), Scalar> = BTreeMap::new();
                for (t, c) in self.mult_row(i, j) {
                    for (a, b, c2) in self.comult_row(*t) {
                        add_to2(&mut lhs, (*a, *b), c.mul(c2));
                    }
                }
                let mut rhs: BTreeMap<(usize, usize), Scalar> = BTreeMap::new();
                for (a1, b1, c1) in self.comult_row(i) {
                    for (a2, b2, c2) in self.comult_row(j) {
                        let c12 = c1.mul(c2);
                        for (a, ca) in self.mult_row(*a1, *a2) {
                            for (b, cb) in self.mult_row(*b1, *b2) {
                                add_to2(&mut rhs, (*a, *b), c12.mul(&ca.mul(cb)));
                            }
                        }
                    }
                }
                if lhs != rhs {
                    return Some(vec![i, j]);
                }
            }
        }
        None
    }

    fn check_comult_unital(&self) -> Option<Vec<usize>> {
        let mut lhs = self.comult_vec(&self.unit);
        lhs.retain(|_, c| !c.is_zero());
        let mut rhs: BTreeMap<(usize, usize), Scalar> = BTreeMap::new();
        for (a, ua) in self.unit.iter().enumerate() {
            if ua.is_zero() {
                continue;
            }
            for (b, ub) in self.unit.iter().enumerate() {
                if !ub.is_zero() {
                    rhs.insert((a, b), ua.mul(ub));
                }
            }
        }
        if lhs == rhs {
            None
        } else {
            Some(vec![])
        }
    }

    fn check_counit_multiplicative(&self) -> Option<Vec<usize>> {
        for i in 0..self.dim {
            for j in 0..self.dim {
                let mut lhs = self.field.zero();
                for (k, c) in self.mult_row(i, j) {
                    if !self.counit[*k].is_zero() {
                        lhs = lhs.add(&c.mul(&self.counit[*k]));
                    }
                }
                if lhs != self.counit[i].mul(&self.counit[j]) {
                    return Some(vec![i, j]);
                }
            }
        }
        None
    }

    fn check_counit_unital(&self) -> Option<Vec<usize>> {
        if self.counit_vec(&self.unit).is_one() {
            None
        } else {
            Some(vec![])
        }
    }

    fn check_antipode(&self, left: bool) -> Option<Vec<usize>> {
        for i in 0..self.dim {
            let mut acc = zero_vec(self.field, self.dim);
            for (j, k, c) in self.comult_row(i) {
                let term = if left {
                    self.mul_vec(self.antipode_image(*j), &unit_vec(self.field, self.dim, *k))
                } else {
                    self.mul_vec(&unit_vec(self.field, self.dim, *j), self.antipode_image(*k))
                };
                for (t, v) in term.into_iter().enumerate() {
                    if !v.is_zero() {
                        acc[t] = acc[t].add(&c.mul(&v));
                    }
                }
            }
            let mut expected = self.unit.clone();
            let eps = self.counit[i].clone();
            for x in expected.iter_mut() {
                *x = x.mul(&eps);
            }
            if acc != expected {
                return Some(vec![i]);
            }
        }
        None
    }
}

fn add_to(map: &mut BTreeMap<usize, Scalar>, k: usize, v: Scalar) {
    if v.is_zero() {
        return;
    }
    match map.entry(k) {
        std::collections::btree_map::Entry::Occupied(mut e) => {
            let s = e.get().add(&v);
            if s.is_zero() {
                e.remove();
            } else {
                *e.get_mut() = s;
            }
        }
        std::collections::btree_map::Entry::Vacant(e) => {
            e.insert(v);
        }
    }
}

pub(crate) fn add_to2(map: &mut BTreeMap<(usize, usize), Scalar>, k: (usize, usize), v: Scalar) {
    if v.is_zero() {
        return;
    }
    match map.entry(k) {
        std::collections::btree_map::Entry::Occupied(mut e) => {
            let s = e.get().add(&v);
            if s.is_zero() {
                e.remove();
            } else {
                *e.get_mut() = s;
            }
        }
        std::collections::btree_map::Entry::Vacant(e) => {
            e.insert(v);
        }
    }
}

fn add_to3(
    map: &mut BTreeMap<(usize, usize, usize), Scalar>,
    k: (usize, usize, usize),
    v: Scalar,
) {
    if v.is_zero() {
        return;
    }
    match map.entry(k) {
        std::collections::btree_map::Entry::Occupied(mut e) => {
            let s = e.get().add(&v);
            if s.is_zero() {
                e.remove();
            } else {
                *e.get_mut() = s;
            }
        }
        std::collections::btree_map::Entry::Vacant(e) => {
            e.insert(v);
        }
    }
}

/// One verified Hopf algebra axiom.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Axiom {
    Associativity,
    UnitLaw,
    Coassociativity,
    CounitLaw,
    ComultMultiplicative,
    ComultUnital,
    CounitMultiplicative,
    CounitUnital,
    AntipodeLeft,
    AntipodeRight,
    AntipodeBijective,
}

impl Axiom {
    pub fn name(&self) -> &'static str {
        match self {
            Axiom::Associativity => "associativity",
            Axiom::UnitLaw => "unit-law",
            Axiom::Coassociativity => "coassociativity",
            Axiom::CounitLaw => "counit-law",
            Axiom::ComultMultiplicative => "comult-multiplicative",
            Axiom::ComultUnital => "comult-unital",
            Axiom::CounitMultiplicative => "counit-multiplicative",
            Axiom::CounitUnital => "counit-unital",
            Axiom::AntipodeLeft => "antipode-left",
            Axiom::AntipodeRight => "antipode-right",
            Axiom::AntipodeBijective => "antipode-bijective",
        }
    }
}

/// Per-axiom verdict; `witness` carries the first failing basis tuple.
#[derive(Clone, Debug)]
pub struct AxiomCheck {
    pub axiom: Axiom,
    pub witness: Option<Vec<usize>>,
}

impl AxiomCheck {
    pub fn pass(&self) -> bool {
        self.witness.is_none()
    }
}

#[derive(Clone, Debug)]
pub struct AxiomReport {
    pub checks: Vec<AxiomCheck>,
}

impl AxiomReport {
    pub fn pass(&self) -> bool {
        self.checks.iter().all(AxiomCheck::pass)
    }

    pub fn first_failure(&self) -> Option<&AxiomCheck> {
        self.checks.iter().find(|c| !c.pass())
    }

    pub fn check(&self, axiom: Axiom) -> &AxiomCheck {
        self.checks
            .iter()
            .find(|c| c.axiom == axiom)
            .expect("axiom present in report")
    }
}

/// A linear map between two Hopf algebras, given by a
/// `target.dim x source.dim` matrix.
#[derive(Clone, Debug)]
pub struct HopfMorphism {
    pub source: Hopf,
    pub target: Hopf,
    pub matrix: Matrix,
}

impl HopfMorphism {
    pub fn new(source: Hopf, target: Hopf, matrix: Matrix) -> Result<Self> {
        if matrix.rows() != target.dim() || matrix.cols() != source.dim() {
            return Err(Error::Input("morphism matrix shape mismatch".into()));
        }
        if source.field() != target.field() {
            return Err(Error::Input("morphism field mismatch".into()));
        }
        Ok(HopfMorphism {
            source,
            target,
            matrix,
        })
    }

    pub fn identity(h: &Hopf) -> Self {
        HopfMorphism {
            source: h.clone(),
            target: h.clone(),
            matrix: Matrix::identity(h.field(), h.dim()),
        }
    }

    pub fn apply(&self, v: &[Scalar]) -> Vec<Scalar> {
        self.matrix.apply(v)
    }

    /// All four structure-map identities, checked exactly on the basis.
    pub fn verify(&self) -> bool {
        self.verify_with_witness().is_none()
    }

    pub fn verify_with_witness(&self) -> Option<Vec<usize>> {
        let s = &self.source;
        let t = &self.target;
        let cols: Vec<Vec<Scalar>> = (0..s.dim()).map(|j| self.matrix.col(j)).collect();
        // unital
        if self.matrix.apply(s.unit_vector()) != t.unit_vector() {
            return Some(vec![]);
        }
        // multiplicative
        for i in 0..s.dim() {
            for j in 0..s.dim() {
                let mut lhs = zero_vec(t.field(), t.dim());
                for (k, c) in s.mult_row(i, j) {
                    for (x, v) in cols[*k].iter().enumerate() {
                        if !v.is_zero() {
                            lhs[x] = lhs[x].add(&c.mul(v));
                        }
                    }
                }
                if lhs != t.mul_vec(&cols[i], &cols[j]) {
                    return Some(vec![i, j]);
                }
            }
        }
        // counit
        for i in 0..s.dim() {
            if t.counit_vec(&cols[i]) != s.counit_row()[i] {
                return Some(vec![i]);
            }
        }
        // comultiplicative
        for i in 0..s.dim() {
            let mut lhs: BTreeMap<(usize, usize), Scalar> = BTreeMap::new();
            for (j, k, c) in s.comult_row(i) {
                for (a, va) in cols[*j].iter().enumerate() {
                    if va.is_zero() {
                        continue;
                    }
                    let cva = c.mul(va);
                    for (b, vb) in cols[*k].iter().enumerate() {
                        if !vb.is_zero() {
                            add_to2(&mut lhs, (a, b), cva.mul(vb));
                        }
                    }
                }
            }
            let rhs = t.comult_vec(&cols[i]);
            if lhs != rhs {
                return Some(vec![i]);
            }
        }
        None
    }

    pub fn is_injective(&self) -> bool {
        self.matrix.rank() == self.source.dim()
    }

    pub fn is_surjective(&self) -> bool {
        self.matrix.rank() == self.target.dim()
    }

    pub fn is_bijective(&self) -> bool {
        self.source.dim() == self.target.dim() && self.matrix.rank() == self.source.dim()
    }

    pub fn image(&self) -> Subspace {
        let rows: Vec<Vec<Scalar>> = (0..self.source.dim()).map(|j| self.matrix.col(j)).collect();
        Subspace::canonicalize(self.source.field(), self.target.dim(), &rows)
            .expect("image rows are well-shaped")
    }

    pub fn kernel(&self) -> Subspace {
        let rows: Vec<Vec<Scalar>> = (0..self.target.dim())
            .map(|i| self.matrix.row(i).to_vec())
            .collect();
        crate::subspace::kernel_of_rows(self.source.field(), &rows, self.source.dim())
    }

    /// Composition `other` then `self`; sources and targets must chain.
    pub fn compose(&self, other: &HopfMorphism) -> Result<HopfMorphism> {
        if !Arc::ptr_eq(&self.source, &other.target) && !self.source.tensor_eq(&other.target) {
            return Err(Error::Input("morphism composition endpoint mismatch".into()));
        }
        Ok(HopfMorphism {
            source: other.source.clone(),
            target: self.target.clone(),
            matrix: self.matrix.compose(&other.matrix)?,
        })
    }

    pub fn inverse(&self) -> Option<HopfMorphism> {
        let inv = self.matrix.inverse()?;
        Some(HopfMorphism {
            source: self.target.clone(),
            target: self.source.clone(),
            matrix: inv,
        })
    }

    /// The transpose as a map between the duals.
    pub fn dual(&self) -> HopfMorphism {
        HopfMorphism {
            source: self.target.dual(),
            target: self.source.dual(),
            matrix: self.matrix.transpose(),
        }
    }
}

/// Builds an incremental RREF holding the span of a set of vectors of the
/// algebra; convenience used throughout the subobject calculus.
pub fn span_of(h: &HopfAlgebra, vectors: &[Vec<Scalar>]) -> Result<Subspace> {
    Subspace::canonicalize(h.field(), h.dim(), vectors)
}

/// The one-dimensional Hopf algebra k.
pub fn scalar_hopf(field: Field) -> Hopf {
    HopfAlgebra::from_parts(
        field,
        vec!["1".into()],
        vec![(0, 0, 0, field.one())],
        vec![field.one()],
        vec![(0, 0, 0, field.one())],
        vec![field.one()],
        vec![(0, 0, field.one())],
        FactorTag::Generic,
    )
    .expect("scalar Hopf algebra")
}

pub use crate::subspace::kernel_from_rref;
pub type RrefAccumulator = RrefBuilder;
