//! Composition series and their invariants: simplicity, Jordan-Hoelder
//! verification, lengths, lower/upper subnormal series, Schreier refinement
//! and factor equivalence.
//!
//! Normal-subalgebra lattices come from a `LatticeProvider`. Construction
//! families carry exact lattices driven by group data; generic inputs fall
//! back to a seeded closure search and results along that path are labelled
//! search-based. Whenever a provider supplies a model for a subalgebra or a
//! quotient, the claim is certified by verifying the full exact sequence.

use std::collections::BTreeSet;
use std::sync::Arc;

use crate::constructions::{abelian_extension, dual_group_algebra, group_algebra};
use crate::error::{Error, Result};
use crate::groups::{group_isomorphic, FiniteGroup};
use crate::hopf::{FactorTag, Hopf, HopfMorphism};
use crate::matched_pair::MatchedPairData;
use crate::matrix::Matrix;
use crate::scalar::{unit_vec, zero_vec, Field, Scalar};
use crate::subobjects::{
    coinvariants, hopf_ideal, materialize_subalgebra, normal_closure, quotient_by,
    stable_under_adjoint, verify_exact_sequence, ExactSequence, HopfSubalgebra, Side,
};
use crate::subspace::{RrefBuilder, Subspace};

/// Whether a verdict relied only on exact family lattices or needed the
/// seeded search.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Confidence {
    Exact,
    SearchBased,
}

impl Confidence {
    pub fn and(self, other: Confidence) -> Confidence {
        if self == Confidence::Exact && other == Confidence::Exact {
            Confidence::Exact
        } else {
            Confidence::SearchBased
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            Confidence::Exact => "exact",
            Confidence::SearchBased => "search-based",
        }
    }
}

/// A claimed standalone copy of a normal subalgebra.
#[derive(Clone)]
pub struct SubModel {
    pub model: Hopf,
    pub provider: LatticeProvider,
    pub injection: HopfMorphism,
}

/// A claimed standalone copy of the corresponding quotient.
#[derive(Clone)]
pub struct QuotModel {
    pub model: Hopf,
    pub provider: LatticeProvider,
    pub surjection: HopfMorphism,
}

/// One proper nontrivial normal Hopf subalgebra offered by a provider.
#[derive(Clone)]
pub struct NormalEntry {
    pub space: Subspace,
    pub sub_model: Option<SubModel>,
    pub quot_model: Option<QuotModel>,
}

/// Context for querying the dual of a known algebra through its primal.
pub struct DualContext {
    pub primal: Hopf,
    pub provider: LatticeProvider,
}

/// Source of normal Hopf subalgebra lattices.
#[derive(Clone)]
pub enum LatticeProvider {
    Group(FiniteGroup),
    DualGroup(FiniteGroup),
    AbelianExt(Arc<MatchedPairData>),
    DualOf(Arc<DualContext>),
    Seeded,
}

/// Provider derived from an algebra's provenance tag.
pub fn provider_for(h: &Hopf) -> LatticeProvider {
    match h.provenance() {
        FactorTag::GroupAlgebra(g) => LatticeProvider::Group(g.clone()),
        FactorTag::DualGroupAlgebra(g) => LatticeProvider::DualGroup(g.clone()),
        FactorTag::AbelianExtension(mp) => LatticeProvider::AbelianExt(mp.clone()),
        FactorTag::Generic => LatticeProvider::Seeded,
    }
}

/// Provider for `dual(primal)` given the primal's provider.
pub fn dual_provider(primal: &Hopf, p: &LatticeProvider) -> LatticeProvider {
    match p {
        LatticeProvider::Group(g) => LatticeProvider::DualGroup(g.clone()),
        LatticeProvider::DualGroup(g) => LatticeProvider::Group(g.clone()),
        other => LatticeProvider::DualOf(Arc::new(DualContext {
            primal: primal.clone(),
            provider: other.clone(),
        })),
    }
}

fn space_key(s: &Subspace) -> String {
    s.basis()
        .iter()
        .map(|r| {
            r.iter()
                .map(Scalar::canonical_string)
                .collect::<Vec<_>>()
                .join(",")
        })
        .collect::<Vec<_>>()
        .join(";")
}

fn sort_spaces(mut v: Vec<Subspace>) -> Vec<Subspace> {
    v.sort_by_key(|s| (s.dim(), s.pivots().to_vec(), space_key(s)));
    v.dedup();
    v
}

impl LatticeProvider {
    pub fn exact_lattice(&self) -> bool {
        !matches!(self, LatticeProvider::Seeded)
    }

    /// Proper nontrivial normal Hopf subalgebras of `h`, sorted
    /// deterministically by dimension, with models where the family knows
    /// them. Entries are claims: callers verify before relying on them.
    pub fn normal_entries(&self, h: &Hopf) -> Result<Vec<NormalEntry>> {
        let field = h.field();
        let mut entries = match self {
            LatticeProvider::Group(g) => group_entries(h, g, field)?,
            LatticeProvider::DualGroup(g) => dual_group_entries(h, g, field)?,
            LatticeProvider::AbelianExt(mp) => abelian_entries(h, mp, field)?,
            LatticeProvider::DualOf(ctx) => dual_of_entries(h, ctx)?,
            LatticeProvider::Seeded => seeded_entries(h)?,
        };
        entries.sort_by_key(|e| (e.space.dim(), e.space.pivots().to_vec(), space_key(&e.space)));
        Ok(entries)
    }

    /// All normal Hopf subalgebras of the Hopf subalgebra spanned by `sub`
    /// (ambient coordinates), endpoints included. `None` when the subalgebra
    /// is outside this provider's recognized forms.
    pub fn normals_within(&self, h: &Hopf, sub: &Subspace) -> Result<Option<Vec<Subspace>>> {
        match self {
            LatticeProvider::Group(g) => {
                let Some(elems) = recognize_grouplike_span(sub) else {
                    return Ok(None);
                };
                if !g.is_subgroup(&elems) {
                    return Ok(None);
                }
                let subs = g.subgroups();
                let mut out = Vec::new();
                for n in subs {
                    if n.iter().all(|e| elems.binary_search(e).is_ok())
                        && g.is_normal_in(&n, &elems)
                    {
                        out.push(Subspace::span_of_units(h.field(), h.dim(), &n));
                    }
                }
                Ok(Some(sort_spaces(out)))
            }
            LatticeProvider::DualGroup(g) => {
                let Some(s_grp) = recognize_coset_span(g, sub, |i| Some(i)) else {
                    return Ok(None);
                };
                let mut out = Vec::new();
                for t in g.normal_subgroups() {
                    if s_grp.iter().all(|e| t.binary_search(e).is_ok()) {
                        out.push(coset_span(h.field(), h.dim(), g, &t, |i| i));
                    }
                }
                Ok(Some(sort_spaces(out)))
            }
            LatticeProvider::AbelianExt(mp) => abelian_normals_within(h, mp, sub),
            LatticeProvider::DualOf(ctx) => {
                if sub.dim() != h.dim() {
                    return Ok(None);
                }
                let mut out = vec![
                    Subspace::canonicalize(h.field(), h.dim(), &[h.unit_vector().to_vec()])?,
                    Subspace::full(h.field(), h.dim()),
                ];
                for e in ctx.provider.normal_entries(&ctx.primal)? {
                    let ideal = hopf_ideal(&ctx.primal, &e.space)?;
                    out.push(ideal.annihilator());
                }
                Ok(Some(sort_spaces(out)))
            }
            LatticeProvider::Seeded => {
                if sub.dim() != h.dim() {
                    return Ok(None);
                }
                let mut out: Vec<Subspace> = seeded_entries(h)?.into_iter().map(|e| e.space).collect();
                out.push(Subspace::canonicalize(h.field(), h.dim(), &[h.unit_vector().to_vec()])?);
                out.push(Subspace::full(h.field(), h.dim()));
                Ok(Some(sort_spaces(out)))
            }
        }
    }

    /// Tagged model with a surjection from the standalone copy of `hi` for
    /// the factor `hi / (hi lo+)`, when the family recognizes the step.
    pub fn factor_model(
        &self,
        h: &Hopf,
        hi: &Subspace,
        lo: &Subspace,
        hi_alg: &Hopf,
    ) -> Result<Option<QuotModel>> {
        match self {
            LatticeProvider::Group(g) => {
                let (Some(s_elems), Some(n_elems)) =
                    (recognize_grouplike_span(hi), recognize_grouplike_span(lo))
                else {
                    return Ok(None);
                };
                if !g.is_subgroup(&s_elems) || !g.is_subgroup(&n_elems) {
                    return Ok(None);
                }
                group_factor_model(h.field(), g, &s_elems, &n_elems, hi_alg)
            }
            LatticeProvider::DualGroup(g) => {
                let (Some(s_grp), Some(t_grp)) = (
                    recognize_coset_span(g, hi, |i| Some(i)),
                    recognize_coset_span(g, lo, |i| Some(i)),
                ) else {
                    return Ok(None);
                };
                dual_block_factor_model_with_pivots(
                    h.field(),
                    g,
                    &s_grp,
                    &t_grp,
                    hi_alg,
                    hi.pivots(),
                    |i| i,
                )
            }
            LatticeProvider::AbelianExt(mp) => abelian_factor_model(h, mp, hi, lo, hi_alg),
            LatticeProvider::DualOf(_) | LatticeProvider::Seeded => Ok(None),
        }
    }
}

// -- recognition helpers -----------------------------------------------------

/// Indices of a coordinate span of unit vectors, if the subspace is one.
fn recognize_grouplike_span(sub: &Subspace) -> Option<Vec<usize>> {
    let mut elems = Vec::new();
    for row in sub.basis() {
        let nnz: Vec<usize> = (0..row.len()).filter(|&i| !row[i].is_zero()).collect();
        if nnz.len() != 1 || !row[nnz[0]].is_one() {
            return None;
        }
        elems.push(nnz[0]);
    }
    elems.sort_unstable();
    Some(elems)
}

/// Ambient span of the coset-sum functions constant on cosets of `s`, with
/// `embed` mapping a group element index to an ambient coordinate.
fn coset_span(
    field: Field,
    ambient_dim: usize,
    g: &FiniteGroup,
    s: &[usize],
    embed: impl Fn(usize) -> usize,
) -> Subspace {
    let mut covered = vec![false; g.order()];
    let mut rows = Vec::new();
    for a in 0..g.order() {
        if covered[a] {
            continue;
        }
        let mut row = zero_vec(field, ambient_dim);
        for &x in s {
            let m = g.mul(a, x);
            covered[m] = true;
            row[embed(m)] = field.one();
        }
        rows.push(row);
    }
    Subspace::canonicalize(field, ambient_dim, &rows).expect("coset rows are well-shaped")
}

/// Recognize `sub` as the span of functions constant on cosets of some
/// normal subgroup of `g`. `extract` maps an ambient coordinate back to a
/// group element (None when the coordinate is outside the block).
fn recognize_coset_span(
    g: &FiniteGroup,
    sub: &Subspace,
    extract: impl Fn(usize) -> Option<usize>,
) -> Option<Vec<usize>> {
    // block vectors of length |G|
    let mut block_rows = Vec::new();
    for row in sub.basis() {
        let mut blk = vec![None; g.order()];
        for (i, c) in row.iter().enumerate() {
            match extract(i) {
                Some(e) => blk[e] = Some(c.clone()),
                None => {
                    if !c.is_zero() {
                        return None;
                    }
                }
            }
        }
        let blk: Vec<Scalar> = blk
            .into_iter()
            .map(|c| c.unwrap_or_else(|| row[0].field().zero()))
            .collect();
        block_rows.push(blk);
    }
    let field = sub.field();
    let block = Subspace::canonicalize(field, g.order(), &block_rows).ok()?;
    if block.dim() != sub.dim() {
        return None;
    }
    // the subgroup fixing every function in the block pointwise under right
    // translation; for the span of functions constant on S-cosets this is
    // exactly S
    let mut stab = Vec::new();
    for s in 0..g.order() {
        let fixes_all = block.basis().iter().all(|row| {
            (0..g.order()).all(|a| row[g.mul(a, s)] == row[a])
        });
        if fixes_all {
            stab.push(s);
        }
    }
    if !g.is_subgroup(&stab) || !g.is_normal_subgroup(&stab) {
        return None;
    }
    if block.dim() * stab.len() != g.order() {
        return None;
    }
    let expected = coset_span(field, g.order(), g, &stab, |i| i);
    if expected != block {
        return None;
    }
    Some(stab)
}

// -- per-family entries -------------------------------------------------------

fn group_entries(h: &Hopf, g: &FiniteGroup, field: Field) -> Result<Vec<NormalEntry>> {
    let mut out = Vec::new();
    for n in g.normal_subgroups() {
        if n.len() == 1 || n.len() == g.order() {
            continue;
        }
        let space = Subspace::span_of_units(field, h.dim(), &n);
        let sub_group = g.subgroup_group(&n)?;
        let sub_alg = group_algebra(&sub_group, field);
        let inj_cols: Vec<Vec<Scalar>> = n.iter().map(|&e| unit_vec(field, h.dim(), e)).collect();
        let injection = HopfMorphism::new(
            sub_alg.clone(),
            h.clone(),
            Matrix::from_cols(field, h.dim(), inj_cols)?,
        )?;
        let (q_group, coset_of) = g.quotient_group(&n)?;
        let q_alg = group_algebra(&q_group, field);
        let surj_cols: Vec<Vec<Scalar>> = (0..g.order())
            .map(|a| unit_vec(field, q_group.order(), coset_of[a]))
            .collect();
        let surjection = HopfMorphism::new(
            h.clone(),
            q_alg.clone(),
            Matrix::from_cols(field, q_group.order(), surj_cols)?,
        )?;
        out.push(NormalEntry {
            space,
            sub_model: Some(SubModel {
                provider: LatticeProvider::Group(sub_group),
                model: sub_alg,
                injection,
            }),
            quot_model: Some(QuotModel {
                provider: LatticeProvider::Group(q_group),
                model: q_alg,
                surjection,
            }),
        });
    }
    Ok(out)
}

fn dual_group_entries(h: &Hopf, g: &FiniteGroup, field: Field) -> Result<Vec<NormalEntry>> {
    let mut out = Vec::new();
    for s in g.normal_subgroups() {
        if s.len() == 1 || s.len() == g.order() {
            continue;
        }
        let space = coset_span(field, h.dim(), g, &s, |i| i);
        let (q_group, coset_of) = g.quotient_group(&s)?;
        let sub_alg = dual_group_algebra(&q_group, field);
        // e'_c -> sum of e_g over the coset c
        let mut inj_cols = vec![zero_vec(field, h.dim()); q_group.order()];
        for a in 0..g.order() {
            inj_cols[coset_of[a]][a] = field.one();
        }
        let injection = HopfMorphism::new(
            sub_alg.clone(),
            h.clone(),
            Matrix::from_cols(field, h.dim(), inj_cols)?,
        )?;
        let s_group = g.subgroup_group(&s)?;
        let quot_alg = dual_group_algebra(&s_group, field);
        // restriction of functions to the subgroup
        let mut surj_cols = vec![zero_vec(field, s.len()); g.order()];
        for (pos, &e) in s.iter().enumerate() {
            surj_cols[e][pos] = field.one();
        }
        let surjection = HopfMorphism::new(
            h.clone(),
            quot_alg.clone(),
            Matrix::from_cols(field, s.len(), surj_cols)?,
        )?;
        out.push(NormalEntry {
            space,
            sub_model: Some(SubModel {
                provider: LatticeProvider::DualGroup(q_group),
                model: sub_alg,
                injection,
            }),
            quot_model: Some(QuotModel {
                provider: LatticeProvider::DualGroup(s_group),
                model: quot_alg,
                surjection,
            }),
        });
    }
    Ok(out)
}

fn stable_normal_subgroups_gamma(mp: &MatchedPairData) -> Vec<Vec<usize>> {
    mp.gamma
        .normal_subgroups()
        .into_iter()
        .filter(|n| {
            n.iter()
                .all(|&g| (0..mp.f.order()).all(|x| n.binary_search(&mp.ract[g][x]).is_ok()))
        })
        .collect()
}

fn stable_normal_subgroups_f(mp: &MatchedPairData) -> Vec<Vec<usize>> {
    mp.f
        .normal_subgroups()
        .into_iter()
        .filter(|n| {
            n.iter()
                .all(|&x| (0..mp.gamma.order()).all(|t| n.binary_search(&mp.lact[t][x]).is_ok()))
        })
        .collect()
}

fn abelian_entries(h: &Hopf, mp: &MatchedPairData, field: Field) -> Result<Vec<NormalEntry>> {
    let nf = mp.f.order();
    let ng = mp.gamma.order();
    let idx = |g: usize, x: usize| g * nf + x;
    let mut out = Vec::new();
    // dual-side entries k^{Gamma/Gamma'} for F-stable normal Gamma'
    for gp in stable_normal_subgroups_gamma(mp) {
        if gp.len() == ng {
            continue; // the trivial subalgebra
        }
        let space = coset_span(field, h.dim(), &mp.gamma, &gp, |e| idx(e, 0));
        let (q_group, coset_of) = mp.gamma.quotient_group(&gp)?;
        let sub_alg = dual_group_algebra(&q_group, field);
        let mut inj_cols = vec![zero_vec(field, h.dim()); q_group.order()];
        for a in 0..ng {
            inj_cols[coset_of[a]][idx(a, 0)] = field.one();
        }
        let injection = HopfMorphism::new(
            sub_alg.clone(),
            h.clone(),
            Matrix::from_cols(field, h.dim(), inj_cols)?,
        )?;
        let (quot_alg, quot_provider, surjection) = if gp.len() == 1 {
            // quotient is the plain group algebra kF
            let kf = group_algebra(&mp.f, field);
            let mut cols = vec![zero_vec(field, nf); h.dim()];
            for x in 0..nf {
                cols[idx(0, x)] = unit_vec(field, nf, x);
            }
            let surj = HopfMorphism::new(
                h.clone(),
                kf.clone(),
                Matrix::from_cols(field, nf, cols)?,
            )?;
            (kf.clone(), LatticeProvider::Group(mp.f.clone()), surj)
        } else {
            let restricted = mp.restrict_gamma(&gp)?;
            let ext = abelian_extension(&restricted, field)?;
            let mut cols = vec![zero_vec(field, ext.hopf.dim()); h.dim()];
            for (pos, &gamma_elem) in gp.iter().enumerate() {
                for x in 0..nf {
                    cols[idx(gamma_elem, x)] = unit_vec(field, ext.hopf.dim(), pos * nf + x);
                }
            }
            let surj = HopfMorphism::new(
                h.clone(),
                ext.hopf.clone(),
                Matrix::from_cols(field, ext.hopf.dim(), cols)?,
            )?;
            (
                ext.hopf.clone(),
                LatticeProvider::AbelianExt(Arc::new(restricted)),
                surj,
            )
        };
        out.push(NormalEntry {
            space,
            sub_model: Some(SubModel {
                provider: LatticeProvider::DualGroup(q_group),
                model: sub_alg,
                injection,
            }),
            quot_model: Some(QuotModel {
                provider: quot_provider,
                model: quot_alg,
                surjection,
            }),
        });
    }
    // group-side entries k^Gamma # kF' for Gamma-stable normal F'
    for fp in stable_normal_subgroups_f(mp) {
        if fp.len() == 1 || fp.len() == nf {
            continue; // F' = 1 duplicates the dual-side entry, F' = F is everything
        }
        let indices: Vec<usize> = (0..ng)
            .flat_map(|g| fp.iter().map(move |&x| idx(g, x)))
            .collect();
        let space = Subspace::span_of_units(field, h.dim(), &indices);
        let restricted = mp.restrict_f(&fp)?;
        let ext = abelian_extension(&restricted, field)?;
        let mut inj_cols = vec![zero_vec(field, h.dim()); ext.hopf.dim()];
        for g in 0..ng {
            for (pos, &x) in fp.iter().enumerate() {
                inj_cols[g * fp.len() + pos][idx(g, x)] = field.one();
            }
        }
        let injection = HopfMorphism::new(
            ext.hopf.clone(),
            h.clone(),
            Matrix::from_cols(field, h.dim(), inj_cols)?,
        )?;
        let (q_group, coset_of) = mp.f.quotient_group(&fp)?;
        let q_alg = group_algebra(&q_group, field);
        let mut surj_cols = vec![zero_vec(field, q_group.order()); h.dim()];
        for x in 0..nf {
            surj_cols[idx(0, x)] = unit_vec(field, q_group.order(), coset_of[x]);
        }
        let surjection = HopfMorphism::new(
            h.clone(),
            q_alg.clone(),
            Matrix::from_cols(field, q_group.order(), surj_cols)?,
        )?;
        out.push(NormalEntry {
            space,
            sub_model: Some(SubModel {
                provider: LatticeProvider::AbelianExt(Arc::new(restricted)),
                model: ext.hopf.clone(),
                injection,
            }),
            quot_model: Some(QuotModel {
                provider: LatticeProvider::Group(q_group),
                model: q_alg,
                surjection,
            }),
        });
    }
    Ok(out)
}

fn dual_of_entries(h: &Hopf, ctx: &DualContext) -> Result<Vec<NormalEntry>> {
    let mut out = Vec::new();
    for e in ctx.provider.normal_entries(&ctx.primal)? {
        let (Some(sub), Some(quot)) = (&e.sub_model, &e.quot_model) else {
            continue;
        };
        let ideal = hopf_ideal(&ctx.primal, &e.space)?;
        let space = ideal.annihilator();
        let sub_alg = quot.model.dual();
        let injection = HopfMorphism::new(
            sub_alg.clone(),
            h.clone(),
            quot.surjection.matrix.transpose(),
        )?;
        let quot_alg = sub.model.dual();
        let surjection = HopfMorphism::new(
            h.clone(),
            quot_alg.clone(),
            sub.injection.matrix.transpose(),
        )?;
        out.push(NormalEntry {
            space,
            sub_model: Some(SubModel {
                provider: dual_provider(&quot.model, &quot.provider),
                model: sub_alg,
                injection,
            }),
            quot_model: Some(QuotModel {
                provider: dual_provider(&sub.model, &sub.provider),
                model: quot_alg,
                surjection,
            }),
        });
    }
    Ok(out)
}

/// Seeded search: normal closures of single basis vectors and pairwise sums.
/// A semi-decision procedure; complete for the bundled pointed fixtures.
fn seeded_entries(h: &Hopf) -> Result<Vec<NormalEntry>> {
    let n = h.dim();
    let mut seeds: Vec<Vec<Scalar>> = (0..n).map(|i| unit_vec(h.field(), n, i)).collect();
    for i in 0..n {
        for j in (i + 1)..n {
            let mut v = unit_vec(h.field(), n, i);
            v[j] = h.field().one();
            seeds.push(v);
        }
    }
    let mut seen: BTreeSet<String> = BTreeSet::new();
    let mut out = Vec::new();
    for s in seeds {
        let closure = normal_closure(h, &[s])?;
        let d = closure.space.dim();
        if d > 1 && d < n && seen.insert(space_key(&closure.space)) {
            out.push(NormalEntry {
                space: closure.space,
                sub_model: None,
                quot_model: None,
            });
        }
    }
    Ok(out)
}

fn abelian_normals_within(
    h: &Hopf,
    mp: &MatchedPairData,
    sub: &Subspace,
) -> Result<Option<Vec<Subspace>>> {
    let field = h.field();
    let nf = mp.f.order();
    let ng = mp.gamma.order();
    let idx = |g: usize, x: usize| g * nf + x;
    if sub.dim() == h.dim() {
        let mut out: Vec<Subspace> = abelian_entries(h, mp, field)?
            .into_iter()
            .map(|e| e.space)
            .collect();
        out.push(Subspace::canonicalize(field, h.dim(), &[h.unit_vector().to_vec()])?);
        out.push(Subspace::full(field, h.dim()));
        return Ok(Some(sort_spaces(out)));
    }
    // dual-block form k^{Gamma/S'}: rows supported on (g, identity)
    let gamma_extract = |i: usize| -> Option<usize> {
        if i % nf == 0 {
            Some(i / nf)
        } else {
            None
        }
    };
    if let Some(s_grp) = recognize_coset_span(&mp.gamma, sub, gamma_extract) {
        let mut out = Vec::new();
        for t in mp.gamma.normal_subgroups() {
            if s_grp.iter().all(|e| t.binary_search(e).is_ok()) {
                out.push(coset_span(field, h.dim(), &mp.gamma, &t, |e| idx(e, 0)));
            }
        }
        return Ok(Some(sort_spaces(out)));
    }
    // group-side form k^Gamma # kF*
    if let Some(indices) = recognize_grouplike_span(sub) {
        let fstar: Vec<usize> = indices
            .iter()
            .filter(|&&i| i / nf == 0)
            .map(|&i| i % nf)
            .collect();
        let expected: Vec<usize> = (0..ng)
            .flat_map(|g| fstar.iter().map(move |&x| idx(g, x)))
            .collect();
        let mut sorted_expected = expected.clone();
        sorted_expected.sort_unstable();
        if sorted_expected != indices || !mp.f.is_subgroup(&fstar) {
            return Ok(None);
        }
        // Gamma-stability of F*
        for t in 0..ng {
            for &x in &fstar {
                if fstar.binary_search(&mp.lact[t][x]).is_err() {
                    return Ok(None);
                }
            }
        }
        let restricted = mp.restrict_f(&fstar)?;
        let mut out = Vec::new();
        // dual candidates within the restricted extension
        for gp in stable_normal_subgroups_gamma(&restricted) {
            out.push(coset_span(field, h.dim(), &mp.gamma, &gp, |e| idx(e, 0)));
        }
        // group-side candidates
        for fpp in stable_normal_subgroups_f(&restricted) {
            let mut inner: Vec<usize> = Vec::new();
            for g in 0..ng {
                for &pos in &fpp {
                    inner.push(idx(g, fstar[pos]));
                }
            }
            out.push(Subspace::span_of_units(field, h.dim(), &inner));
        }
        return Ok(Some(sort_spaces(out)));
    }
    Ok(None)
}

fn group_factor_model(
    field: Field,
    g: &FiniteGroup,
    s_elems: &[usize],
    n_elems: &[usize],
    hi_alg: &Hopf,
) -> Result<Option<QuotModel>> {
    if !n_elems.iter().all(|e| s_elems.binary_search(e).is_ok()) {
        return Ok(None);
    }
    let s_group = g.subgroup_group(s_elems)?;
    let n_in_s: Vec<usize> = n_elems
        .iter()
        .map(|e| s_elems.binary_search(e).expect("contained"))
        .collect();
    if !s_group.is_normal_subgroup(&n_in_s) {
        return Ok(None);
    }
    let (q_group, coset_of) = s_group.quotient_group(&n_in_s)?;
    let q_alg = group_algebra(&q_group, field);
    // standalone basis of hi is the unit rows in ambient element order
    let cols: Vec<Vec<Scalar>> = (0..s_elems.len())
        .map(|a| unit_vec(field, q_group.order(), coset_of[a]))
        .collect();
    let surjection = HopfMorphism::new(
        hi_alg.clone(),
        q_alg.clone(),
        Matrix::from_cols(field, q_group.order(), cols)?,
    )?;
    Ok(Some(QuotModel {
        provider: LatticeProvider::Group(q_group),
        model: q_alg,
        surjection,
    }))
}

/// Factor of a step `k^{G/T} inside k^{G/S}` (with `S <= T`): the functions
/// on `T/S`. `pivot_to_elem` recovers the group element carried by the
/// ambient pivot of each standalone basis row (the rows are coset sums with
/// disjoint supports, so the pivot is the minimal coset representative).
fn dual_block_factor_model_with_pivots(
    field: Field,
    g: &FiniteGroup,
    s_grp: &[usize],
    t_grp: &[usize],
    hi_alg: &Hopf,
    hi_pivots: &[usize],
    pivot_to_elem: impl Fn(usize) -> usize,
) -> Result<Option<QuotModel>> {
    if !s_grp.iter().all(|e| t_grp.binary_search(e).is_ok()) {
        return Ok(None);
    }
    let t_group = g.subgroup_group(t_grp)?;
    let s_in_t: Vec<usize> = s_grp
        .iter()
        .map(|e| t_grp.binary_search(e).expect("contained"))
        .collect();
    if !t_group.is_normal_subgroup(&s_in_t) {
        return Ok(None);
    }
    let (ts_group, coset_of) = t_group.quotient_group(&s_in_t)?;
    let model = dual_group_algebra(&ts_group, field);
    let mut cols = Vec::with_capacity(hi_alg.dim());
    for a in 0..hi_alg.dim() {
        let rep = pivot_to_elem(hi_pivots[a]);
        let col = match t_grp.binary_search(&rep) {
            Ok(pos) => unit_vec(field, ts_group.order(), coset_of[pos]),
            Err(_) => zero_vec(field, ts_group.order()),
        };
        cols.push(col);
    }
    let surjection = HopfMorphism::new(
        hi_alg.clone(),
        model.clone(),
        Matrix::from_cols(field, ts_group.order(), cols)?,
    )?;
    Ok(Some(QuotModel {
        provider: LatticeProvider::DualGroup(ts_group),
        model,
        surjection,
    }))
}

fn abelian_factor_model(
    h: &Hopf,
    mp: &MatchedPairData,
    hi: &Subspace,
    lo: &Subspace,
    hi_alg: &Hopf,
) -> Result<Option<QuotModel>> {
    let field = h.field();
    let nf = mp.f.order();
    let gamma_extract = |i: usize| -> Option<usize> {
        if i % nf == 0 {
            Some(i / nf)
        } else {
            None
        }
    };
    // both inside the dual block
    if let (Some(s_grp), Some(t_grp)) = (
        recognize_coset_span(&mp.gamma, hi, gamma_extract),
        recognize_coset_span(&mp.gamma, lo, gamma_extract),
    ) {
        return dual_block_factor_model_with_pivots(
            field,
            &mp.gamma,
            &s_grp,
            &t_grp,
            hi_alg,
            hi.pivots(),
            |p| p / nf,
        );
    }
    // both of group-side form (the lower one possibly the full dual block)
    let hi_idx = recognize_grouplike_span(hi);
    if let Some(indices) = hi_idx {
        let fstar: Vec<usize> = indices
            .iter()
            .filter(|&&i| i / nf == 0)
            .map(|&i| i % nf)
            .collect();
        if !mp.f.is_subgroup(&fstar) || indices.len() != fstar.len() * mp.gamma.order() {
            return Ok(None);
        }
        // the lower term: either k^Gamma # kF'' or the full dual block (F''=1)
        let flow: Vec<usize> = if let Some(lo_idx) = recognize_grouplike_span(lo) {
            let f2: Vec<usize> = lo_idx
                .iter()
                .filter(|&&i| i / nf == 0)
                .map(|&i| i % nf)
                .collect();
            if lo_idx.len() != f2.len() * mp.gamma.order() {
                return Ok(None);
            }
            f2
        } else if recognize_coset_span(&mp.gamma, lo, gamma_extract)
            .map(|s| s.len() == 1)
            .unwrap_or(false)
        {
            vec![0]
        } else {
            return Ok(None);
        };
        if !flow.iter().all(|x| fstar.binary_search(x).is_ok()) {
            return Ok(None);
        }
        let fstar_group = mp.f.subgroup_group(&fstar)?;
        let flow_in_fstar: Vec<usize> = flow
            .iter()
            .map(|x| fstar.binary_search(x).expect("contained"))
            .collect();
        if !fstar_group.is_normal_subgroup(&flow_in_fstar) {
            return Ok(None);
        }
        let (q_group, coset_of) = fstar_group.quotient_group(&flow_in_fstar)?;
        let model = group_algebra(&q_group, field);
        // standalone basis rows of hi are unit vectors at idx(g, x), ordered
        // by ambient index; map (g, x) -> [g == e] e_{coset(x)}
        let mut cols = Vec::with_capacity(hi_alg.dim());
        for &amb in hi.pivots() {
            let g = amb / nf;
            let x = amb % nf;
            if g == 0 {
                let pos = fstar.binary_search(&x).expect("in F*");
                cols.push(unit_vec(field, q_group.order(), coset_of[pos]));
            } else {
                cols.push(zero_vec(field, q_group.order()));
            }
        }
        let surjection = HopfMorphism::new(
            hi_alg.clone(),
            model.clone(),
            Matrix::from_cols(field, q_group.order(), cols)?,
        )?;
        return Ok(Some(QuotModel {
            provider: LatticeProvider::Group(q_group),
            model,
            surjection,
        }));
    }
    Ok(None)
}

// -- fingerprints -------------------------------------------------------------

/// Computable isomorphism invariants over Q; equality is necessary but not
/// sufficient for a Hopf isomorphism. The dual half makes the fingerprint
/// sensitive to the coalgebra side.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct IsoFingerprint {
    pub dim: usize,
    pub center: usize,
    pub radical: usize,
    pub abelianization: usize,
    pub rational_characters: usize,
    pub dual_center: usize,
    pub dual_radical: usize,
    pub dual_abelianization: usize,
    pub dual_rational_characters: usize,
}

impl IsoFingerprint {
    pub fn compute(h: &Hopf) -> Result<IsoFingerprint> {
        if h.field() != Field::Q {
            return Err(Error::Unsupported(
                "fingerprints require characteristic zero".into(),
            ));
        }
        let (c, r, a, ch) = algebra_half(h)?;
        let d = h.dual();
        let (dc, dr, da, dch) = algebra_half(&d)?;
        Ok(IsoFingerprint {
            dim: h.dim(),
            center: c,
            radical: r,
            abelianization: a,
            rational_characters: ch,
            dual_center: dc,
            dual_radical: dr,
            dual_abelianization: da,
            dual_rational_characters: dch,
        })
    }

    /// Fingerprint of the dual: swap the two halves.
    pub fn swapped(&self) -> IsoFingerprint {
        IsoFingerprint {
            dim: self.dim,
            center: self.dual_center,
            radical: self.dual_radical,
            abelianization: self.dual_abelianization,
            rational_characters: self.dual_rational_characters,
            dual_center: self.center,
            dual_radical: self.radical,
            dual_abelianization: self.abelianization,
            dual_rational_characters: self.rational_characters,
        }
    }

    pub fn describe(&self) -> String {
        format!(
            "d{}:z{}:r{}:ab{}:ch{}:z*{}:r*{}:ab*{}:ch*{}",
            self.dim,
            self.center,
            self.radical,
            self.abelianization,
            self.rational_characters,
            self.dual_center,
            self.dual_radical,
            self.dual_abelianization,
            self.dual_rational_characters
        )
    }
}

fn algebra_half(h: &Hopf) -> Result<(usize, usize, usize, usize)> {
    let center = center_dim(h);
    let radical = h.radical()?.dim();
    let alg = PlainAlgebra::from_hopf(h);
    let comm_ideal = alg.commutator_ideal();
    let abelianization = alg.dim - comm_ideal.dim();
    let ab = alg.quotient(&comm_ideal);
    let rad = ab.radical();
    let semi = ab.quotient(&rad);
    let chars = semi.count_rational_characters();
    Ok((center, radical, abelianization, chars))
}

fn center_dim(h: &Hopf) -> usize {
    let n = h.dim();
    let mut rows: std::collections::BTreeMap<usize, Vec<Scalar>> = std::collections::BTreeMap::new();
    let bump = |key: usize, j: usize, c: Scalar, rows: &mut std::collections::BTreeMap<usize, Vec<Scalar>>| {
        if c.is_zero() {
            return;
        }
        let row = rows.entry(key).or_insert_with(|| zero_vec(h.field(), n));
        row[j] = row[j].add(&c);
    };
    for i in 0..n {
        for j in 0..n {
            for (k, c) in h.mult_row(j, i) {
                bump(i * n + k, j, c.clone(), &mut rows);
            }
            for (k, c) in h.mult_row(i, j) {
                bump(i * n + k, j, c.neg(), &mut rows);
            }
        }
    }
    let mut b = RrefBuilder::new(h.field(), n);
    for r in rows.into_values() {
        b.insert(r);
    }
    n - b.rank()
}

/// Plain associative algebra scaffolding for character counting.
struct PlainAlgebra {
    field: Field,
    dim: usize,
    mult: Vec<Vec<Vec<Scalar>>>, // [a][b] -> product vector
    unit: Vec<Scalar>,
}

impl PlainAlgebra {
    fn from_hopf(h: &Hopf) -> PlainAlgebra {
        let n = h.dim();
        let mut mult = vec![vec![zero_vec(h.field(), n); n]; n];
        for a in 0..n {
            for b in 0..n {
                for (k, c) in h.mult_row(a, b) {
                    mult[a][b][*k] = c.clone();
                }
            }
        }
        PlainAlgebra {
            field: h.field(),
            dim: n,
            mult,
            unit: h.unit_vector().to_vec(),
        }
    }

    fn mul(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        let mut out = zero_vec(self.field, self.dim);
        for (a, xa) in x.iter().enumerate() {
            if xa.is_zero() {
                continue;
            }
            for (b, yb) in y.iter().enumerate() {
                if yb.is_zero() {
                    continue;
                }
                let c = xa.mul(yb);
                for (k, m) in self.mult[a][b].iter().enumerate() {
                    if !m.is_zero() {
                        out[k] = out[k].add(&c.mul(m));
                    }
                }
            }
        }
        out
    }

    fn commutator_ideal(&self) -> Subspace {
        let mut b = RrefBuilder::new(self.field, self.dim);
        for i in 0..self.dim {
            for j in 0..self.dim {
                let mut comm = self.mult[i][j].clone();
                for (k, c) in self.mult[j][i].iter().enumerate() {
                    comm[k] = comm[k].sub(c);
                }
                b.insert(comm);
            }
        }
        // close under left and right multiplications
        loop {
            let before = b.rank();
            let basis: Vec<Vec<Scalar>> = b.rows().to_vec();
            for i in 0..self.dim {
                let e = unit_vec(self.field, self.dim, i);
                for v in &basis {
                    b.insert(self.mul(&e, v));
                    b.insert(self.mul(v, &e));
                }
            }
            if b.rank() == before {
                break;
            }
        }
        b.into_subspace()
    }

    fn radical(&self) -> Subspace {
        // trace form of the left regular representation
        let mut gram = vec![zero_vec(self.field, self.dim); self.dim];
        for i in 0..self.dim {
            for j in 0..self.dim {
                let prod = self.mult[i][j].clone();
                let mut tr = self.field.zero();
                for (s, c) in prod.iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    // trace of left multiplication by e_s
                    let mut t = self.field.zero();
                    for u in 0..self.dim {
                        t = t.add(&self.mult[s][u][u]);
                    }
                    tr = tr.add(&c.mul(&t));
                }
                gram[i][j] = tr;
            }
        }
        crate::subspace::kernel_of_rows(self.field, &gram, self.dim)
    }

    fn quotient(&self, ideal: &Subspace) -> PlainAlgebra {
        let comp = ideal.complement_indices();
        let qdim = comp.len();
        let project = |v: &[Scalar]| -> Vec<Scalar> {
            let r = ideal.reduce(v);
            comp.iter().map(|&c| r[c].clone()).collect()
        };
        let mut mult = vec![vec![zero_vec(self.field, qdim); qdim]; qdim];
        for (a, &ca) in comp.iter().enumerate() {
            for (b, &cb) in comp.iter().enumerate() {
                mult[a][b] = project(&self.mult[ca][cb]);
            }
        }
        PlainAlgebra {
            field: self.field,
            dim: qdim,
            mult,
            unit: project(&self.unit),
        }
    }

    /// Number of algebra maps to Q; assumes the algebra is commutative and
    /// semisimple (so minimal polynomials are squarefree and components
    /// split off along rational roots).
    fn count_rational_characters(&self) -> usize {
        if self.dim == 0 {
            return 0;
        }
        if self.dim == 1 {
            return 1;
        }
        for idx in 0..self.dim {
            let b = unit_vec(self.field, self.dim, idx);
            // skip scalar multiples of the unit
            let span = Subspace::canonicalize(self.field, self.dim, &[self.unit.clone(), b.clone()])
                .expect("well-shaped");
            if span.dim() == 1 {
                continue;
            }
            let mu = self.min_poly(&b);
            let roots = rational_roots(&mu);
            let mut total = 0;
            for r in roots {
                // ideal (b - r) A
                let mut shifted = b.clone();
                for (k, u) in self.unit.iter().enumerate() {
                    shifted[k] = shifted[k].sub(&u.mul(&r));
                }
                let mut gen_rows = Vec::new();
                for j in 0..self.dim {
                    gen_rows.push(self.mul(&shifted, &unit_vec(self.field, self.dim, j)));
                }
                let ideal = Subspace::canonicalize(self.field, self.dim, &gen_rows)
                    .expect("well-shaped");
                total += self.quotient(&ideal).count_rational_characters();
            }
            return total;
        }
        1
    }

    /// Minimal polynomial coefficients `c_0..c_m` with `sum c_i b^i = 0`,
    /// normalized monic (`c_m = 1`).
    fn min_poly(&self, b: &[Scalar]) -> Vec<Scalar> {
        let mut powers: Vec<Vec<Scalar>> = vec![self.unit.clone()];
        let mut acc = RrefBuilder::new(self.field, self.dim);
        acc.insert(self.unit.clone());
        loop {
            let next = self.mul(powers.last().expect("nonempty"), b);
            if !acc.insert(next.clone()) {
                // solve sum c_i powers[i] = next
                let sol = solve_exact(self.field, &powers, &next).expect("dependent power");
                let mut coeffs: Vec<Scalar> = sol.into_iter().map(|c| c.neg()).collect();
                coeffs.push(self.field.one());
                return coeffs;
            }
            powers.push(next);
        }
    }
}

/// Solve `sum_j cols[j] x_j = target` exactly; any solution (free variables
/// zeroed) or None.
fn solve_exact(field: Field, cols: &[Vec<Scalar>], target: &[Scalar]) -> Option<Vec<Scalar>> {
    let m = cols.len();
    let n = target.len();
    let mut b = RrefBuilder::new(field, m + 1);
    for i in 0..n {
        let mut row: Vec<Scalar> = cols.iter().map(|c| c[i].clone()).collect();
        row.push(target[i].clone());
        b.insert(row);
    }
    if b.pivots().contains(&m) {
        return None;
    }
    let mut sol = zero_vec(field, m);
    for (r, &p) in b.pivots().iter().enumerate() {
        sol[p] = b.rows()[r][m].clone();
    }
    // verify (free variables may interact; reject spurious solutions)
    let mut check = zero_vec(field, n);
    for (j, c) in cols.iter().enumerate() {
        if !sol[j].is_zero() {
            for (i, v) in c.iter().enumerate() {
                check[i] = check[i].add(&v.mul(&sol[j]));
            }
        }
    }
    if check == target.to_vec() {
        Some(sol)
    } else {
        None
    }
}

/// Rational roots of a polynomial with rational coefficients `c_0..c_m`.
fn rational_roots(coeffs: &[Scalar]) -> Vec<Scalar> {
    use num_bigint::BigInt;
    use num_traits::{One, Signed, Zero};
    let field = Field::Q;
    // clear denominators
    let mut lcm = BigInt::one();
    for c in coeffs {
        let q = c.as_q().expect("rational coefficients");
        let d = q.denom();
        let g = gcd_big(&lcm, d);
        lcm = &lcm / &g * d;
    }
    let ints: Vec<BigInt> = coeffs
        .iter()
        .map(|c| {
            let q = c.as_q().expect("rational");
            q.numer() * (&lcm / q.denom())
        })
        .collect();
    let mut roots = Vec::new();
    // strip zero roots
    let mut low = 0;
    while low < ints.len() && ints[low].is_zero() {
        low += 1;
    }
    if low > 0 {
        roots.push(field.zero());
    }
    if low >= ints.len() {
        return roots;
    }
    let a0 = ints[low].abs();
    let am = ints.last().expect("nonempty").abs();
    let eval = |r: &Scalar| -> bool {
        let mut acc = field.zero();
        for c in coeffs.iter().rev() {
            acc = acc.mul(r).add(c);
        }
        acc.is_zero()
    };
    let p_divs = small_divisors(&a0);
    let q_divs = small_divisors(&am);
    let mut seen = BTreeSet::new();
    for p in &p_divs {
        for q in &q_divs {
            for sign in [1i64, -1] {
                let cand = field.ratio(sign * (*p as i64), *q as i64);
                let key = cand.canonical_string();
                if seen.insert(key) && eval(&cand) {
                    roots.push(cand);
                }
            }
        }
    }
    roots
}

fn gcd_big(a: &num_bigint::BigInt, b: &num_bigint::BigInt) -> num_bigint::BigInt {
    use num_traits::Zero;
    let mut a = a.clone();
    let mut b = b.clone();
    while !b.is_zero() {
        let r = &a % &b;
        a = b;
        b = r;
    }
    if a < num_bigint::BigInt::zero() {
        -a
    } else {
        a
    }
}

fn small_divisors(n: &num_bigint::BigInt) -> Vec<u64> {
    use num_traits::ToPrimitive;
    let v = n.to_u64().unwrap_or(0);
    if v == 0 {
        return vec![1];
    }
    let mut out = Vec::new();
    let mut d = 1u64;
    while d * d <= v {
        if v % d == 0 {
            out.push(d);
            out.push(v / d);
        }
        d += 1;
    }
    out.sort_unstable();
    out.dedup();
    out
}

// -- factors and composition series --------------------------------------------

/// One composition (or series) factor with its provenance tag and, over Q,
/// its fingerprint.
#[derive(Clone)]
pub struct Factor {
    pub algebra: Hopf,
    pub tag: FactorTag,
    pub fingerprint: Option<IsoFingerprint>,
    pub provider: LatticeProvider,
}

impl Factor {
    fn new(h: &Hopf, provider: LatticeProvider) -> Result<Factor> {
        let fingerprint = if h.field() == Field::Q {
            Some(IsoFingerprint::compute(h)?)
        } else {
            None
        };
        Ok(Factor {
            algebra: h.clone(),
            tag: h.provenance().clone(),
            fingerprint,
            provider,
        })
    }

    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    /// Dual factor: dual algebra, dual tag, swapped fingerprint.
    pub fn dual(&self) -> Factor {
        let d = self.algebra.dual();
        let provider = dual_provider(&self.algebra, &self.provider);
        Factor {
            tag: d.provenance().clone(),
            algebra: d,
            fingerprint: self.fingerprint.as_ref().map(IsoFingerprint::swapped),
            provider,
        }
    }
}

/// Recursion tree of a composition series.
#[derive(Clone, Debug)]
pub enum RecursionNode {
    Leaf {
        dim: usize,
    },
    Split {
        dim: usize,
        chosen_dim: usize,
        sub: Box<RecursionNode>,
        quot: Box<RecursionNode>,
    },
}

pub struct CompositionSeries {
    pub factors: Vec<Factor>,
    pub tree: RecursionNode,
    pub confidence: Confidence,
}

impl CompositionSeries {
    pub fn length(&self) -> usize {
        self.factors.len()
    }
}

/// Provider entries filtered to verified normal Hopf subalgebras; a provider
/// claiming a non-normal subspace is an internal error.
fn verified_entries(h: &Hopf, p: &LatticeProvider) -> Result<Vec<NormalEntry>> {
    let mut out = Vec::new();
    for e in p.normal_entries(h)? {
        if e.space.dim() <= 1 || e.space.dim() >= h.dim() {
            continue;
        }
        let sub = HopfSubalgebra::new(h.clone(), e.space.clone()).map_err(|err| {
            Error::Internal(format!("provider offered a non-subalgebra: {err}"))
        })?;
        if !crate::subobjects::is_normal(&sub, Side::Both)? {
            return Err(Error::Internal(
                "provider offered a non-normal subalgebra".into(),
            ));
        }
        out.push(e);
    }
    Ok(out)
}

/// Resolve an entry into verified standalone models of the subalgebra and
/// the quotient, certifying the full exact sequence either way.
pub(crate) fn resolve_entry(
    h: &Hopf,
    e: &NormalEntry,
) -> Result<((Hopf, LatticeProvider), (Hopf, LatticeProvider), ExactSequence, Confidence)> {
    let mut confidence = Confidence::Exact;
    let (sub_alg, sub_p, inj) = match &e.sub_model {
        Some(m) => (m.model.clone(), m.provider.clone(), m.injection.clone()),
        None => {
            confidence = Confidence::SearchBased;
            let (s, i) = materialize_subalgebra(h, &e.space, FactorTag::Generic)?;
            (s, LatticeProvider::Seeded, i)
        }
    };
    if inj.image() != e.space {
        return Err(Error::TheoremViolation(
            "claimed injection has the wrong image".into(),
        ));
    }
    let (quot_alg, quot_p, surj) = match &e.quot_model {
        Some(m) => (m.model.clone(), m.provider.clone(), m.surjection.clone()),
        None => {
            confidence = Confidence::SearchBased;
            let q = quotient_by(h, &e.space)?;
            (q.quotient.clone(), LatticeProvider::Seeded, q.projection)
        }
    };
    let (report, seq) = verify_exact_sequence(&inj, &surj)?;
    let Some(seq) = seq else {
        return Err(Error::TheoremViolation(format!(
            "claimed models do not form an exact sequence: {}",
            report.failure.unwrap_or_else(|| "unknown".into())
        )));
    };
    Ok(((sub_alg, sub_p), (quot_alg, quot_p), seq, confidence))
}

/// Is `h` simple: no proper nontrivial normal Hopf subalgebra offered and
/// verified.
pub fn is_simple(h: &Hopf, p: &LatticeProvider) -> Result<bool> {
    if h.dim() == 1 {
        return Ok(false);
    }
    Ok(verified_entries(h, p)?.is_empty())
}

/// Composition series by the recursive definition: pick a proper nontrivial
/// normal subalgebra, recurse on it and on the quotient, concatenate.
pub fn composition_series(h: &Hopf, p: &LatticeProvider) -> Result<CompositionSeries> {
    let mut confidence = if p.exact_lattice() {
        Confidence::Exact
    } else {
        Confidence::SearchBased
    };
    if h.dim() == 1 {
        return Ok(CompositionSeries {
            factors: Vec::new(),
            tree: RecursionNode::Leaf { dim: 1 },
            confidence,
        });
    }
    let entries = verified_entries(h, p)?;
    if entries.is_empty() {
        let factor = Factor::new(h, p.clone())?;
        return Ok(CompositionSeries {
            factors: vec![factor],
            tree: RecursionNode::Leaf { dim: h.dim() },
            confidence,
        });
    }
    let e = &entries[0];
    let ((sub_alg, sub_p), (quot_alg, quot_p), _seq, c) = resolve_entry(h, e)?;
    confidence = confidence.and(c);
    let s = composition_series(&sub_alg, &sub_p)?;
    let q = composition_series(&quot_alg, &quot_p)?;
    confidence = confidence.and(s.confidence).and(q.confidence);
    let mut factors = s.factors;
    factors.extend(q.factors);
    Ok(CompositionSeries {
        factors,
        tree: RecursionNode::Split {
            dim: h.dim(),
            chosen_dim: e.space.dim(),
            sub: Box::new(s.tree),
            quot: Box::new(q.tree),
        },
        confidence,
    })
}

pub fn length(h: &Hopf, p: &LatticeProvider) -> Result<usize> {
    Ok(composition_series(h, p)?.length())
}

/// All first-choice branches produce equivalent factor multisets.
pub struct JordanHolderReport {
    pub branches: usize,
    pub equivalent: bool,
    pub factor_dims: Vec<usize>,
    pub confidence: Confidence,
}

pub fn jordan_holder_verify(h: &Hopf, p: &LatticeProvider) -> Result<JordanHolderReport> {
    let entries = verified_entries(h, p)?;
    let mut branch_factors: Vec<Vec<Factor>> = Vec::new();
    let mut confidence = if p.exact_lattice() {
        Confidence::Exact
    } else {
        Confidence::SearchBased
    };
    if entries.is_empty() {
        let base = composition_series(h, p)?;
        return Ok(JordanHolderReport {
            branches: 1,
            equivalent: true,
            factor_dims: base.factors.iter().map(Factor::dim).collect(),
            confidence: base.confidence,
        });
    }
    for e in &entries {
        let ((sub_alg, sub_p), (quot_alg, quot_p), _seq, c) = resolve_entry(h, e)?;
        let s = composition_series(&sub_alg, &sub_p)?;
        let q = composition_series(&quot_alg, &quot_p)?;
        confidence = confidence.and(c).and(s.confidence).and(q.confidence);
        let mut f = s.factors;
        f.extend(q.factors);
        branch_factors.push(f);
    }
    let mut equivalent = true;
    for w in branch_factors.windows(2) {
        if !multiset_equivalent(&w[0], &w[1], false)? {
            equivalent = false;
        }
    }
    let mut dims: Vec<usize> = branch_factors[0].iter().map(Factor::dim).collect();
    dims.sort_unstable();
    Ok(JordanHolderReport {
        branches: branch_factors.len(),
        equivalent,
        factor_dims: dims,
        confidence,
    })
}

/// Length additivity along a verified exact sequence, with providers derived
/// from provenance.
pub fn additivity_check(seq: &ExactSequence) -> Result<bool> {
    let h = &seq.pi.source;
    let sub = &seq.i.source;
    let quot = &seq.pi.target;
    let lh = length(h, &provider_for(h))?;
    let ls = length(sub, &provider_for(sub))?;
    let lq = length(quot, &provider_for(quot))?;
    Ok(lh == ls + lq)
}

/// Composition factors of the dual are the duals of the composition factors.
pub fn dual_factors_check(h: &Hopf, p: &LatticeProvider) -> Result<bool> {
    let primal = composition_series(h, p)?;
    let dual_h = h.dual();
    let dual_series = composition_series(&dual_h, &dual_provider(h, p))?;
    let dualized: Vec<Factor> = primal.factors.iter().map(Factor::dual).collect();
    multiset_equivalent(&dual_series.factors, &dualized, false)
}

/// Semisimplicity (and cosemisimplicity) pass to the factors and back.
pub fn semisimple_factors_check(h: &Hopf, p: &LatticeProvider) -> Result<bool> {
    let series = composition_series(h, p)?;
    let ss = h.is_semisimple()?;
    let all_ss = series
        .factors
        .iter()
        .map(|f| f.algebra.is_semisimple())
        .collect::<Result<Vec<bool>>>()?
        .into_iter()
        .all(|b| b);
    let coss = h.is_cosemisimple()?;
    let all_coss = series
        .factors
        .iter()
        .map(|f| f.algebra.is_cosemisimple())
        .collect::<Result<Vec<bool>>>()?
        .into_iter()
        .all(|b| b);
    Ok(ss == all_ss && coss == all_coss && (ss == all_ss))
}

// -- subnormal series -----------------------------------------------------------

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum SeriesDirection {
    Lower,
    Upper,
}

/// A chain of nested subalgebras, outermost first: `chain[0] = H`,
/// `chain[last] = k`. For upper series the chain lives in the dual algebra.
#[derive(Clone)]
pub struct SubnormalSeries {
    pub direction: SeriesDirection,
    pub parent: Hopf,
    pub chain: Vec<Subspace>,
}

pub struct SeriesReport {
    pub valid: bool,
    pub step_errors: Vec<(usize, String)>,
    pub factors: Vec<Factor>,
    pub dims_product_ok: bool,
    pub confidence: Confidence,
}

/// Verify nesting, subalgebra structure and per-step normality; construct
/// the factors (with family models where recognized).
pub fn verify_subnormal(series: &SubnormalSeries, p: &LatticeProvider) -> Result<SeriesReport> {
    let (h, p) = match series.direction {
        SeriesDirection::Lower => (series.parent.clone(), p.clone()),
        SeriesDirection::Upper => (
            series.parent.dual(),
            dual_provider(&series.parent, p),
        ),
    };
    let chain = &series.chain;
    let mut step_errors = Vec::new();
    if chain.is_empty() || chain[0].dim() != h.dim() {
        step_errors.push((0, "chain must start at the whole algebra".into()));
    }
    let k_span = Subspace::canonicalize(h.field(), h.dim(), &[h.unit_vector().to_vec()])?;
    if chain.last().map(|s| s != &k_span).unwrap_or(true) {
        step_errors.push((chain.len().saturating_sub(1), "chain must end at k".into()));
    }
    for (i, w) in chain.windows(2).enumerate() {
        if !w[0].contains_space(&w[1]) {
            step_errors.push((i, "chain is not nested".into()));
            continue;
        }
        if HopfSubalgebra::new(h.clone(), w[0].clone()).is_err()
            || HopfSubalgebra::new(h.clone(), w[1].clone()).is_err()
        {
            step_errors.push((i, "chain term is not a Hopf subalgebra".into()));
            continue;
        }
        let normal = stable_under_adjoint(&h, w[0].basis(), &w[1], Side::Left)
            && stable_under_adjoint(&h, w[0].basis(), &w[1], Side::Right);
        if !normal {
            step_errors.push((i, "term is not normal in its predecessor".into()));
        }
    }
    let valid = step_errors.is_empty();
    let mut factors = Vec::new();
    let mut confidence = Confidence::Exact;
    if valid {
        for w in chain.windows(2) {
            let (f, c) = step_factor(&h, &p, &w[0], &w[1])?;
            confidence = confidence.and(c);
            factors.push(f);
        }
    }
    let prod: usize = factors.iter().map(Factor::dim).product();
    let dims_product_ok = valid && prod == h.dim();
    // upper factors are the duals of the dual-side lower factors
    let factors = match series.direction {
        SeriesDirection::Lower => factors,
        SeriesDirection::Upper => factors.iter().map(Factor::dual).collect(),
    };
    Ok(SeriesReport {
        valid,
        step_errors,
        factors,
        dims_product_ok,
        confidence,
    })
}

/// The factor `hi / (hi lo+)` as a tagged model when the provider recognizes
/// the step (certified through a first-isomorphism construction), otherwise
/// the raw quotient with a generic tag.
fn step_factor(
    h: &Hopf,
    p: &LatticeProvider,
    hi: &Subspace,
    lo: &Subspace,
) -> Result<(Factor, Confidence)> {
    let (hi_alg, _inj) = materialize_subalgebra(h, hi, FactorTag::Generic)?;
    let lo_in_hi = crate::iso::subspace_in_coords(hi, lo)?;
    if let Some(qm) = p.factor_model(h, hi, lo, &hi_alg)? {
        if qm.surjection.verify_with_witness().is_none()
            && qm.surjection.is_surjective()
            && coinvariants(&qm.surjection, Side::Left)? == lo_in_hi
        {
            let f = Factor::new(&qm.model, qm.provider.clone())?;
            return Ok((f, Confidence::Exact));
        }
        return Err(Error::TheoremViolation(
            "family factor model failed verification".into(),
        ));
    }
    let quo = quotient_by(&hi_alg, &lo_in_hi)?;
    let f = Factor::new(&quo.quotient, LatticeProvider::Seeded)?;
    Ok((f, Confidence::SearchBased))
}

/// Maximality of every step against the provider lattice: no normal
/// subalgebra strictly between consecutive terms.
pub fn is_lower_composition_series(
    series: &SubnormalSeries,
    p: &LatticeProvider,
) -> Result<(bool, Confidence)> {
    let base = verify_subnormal(series, p)?;
    if !base.valid {
        return Ok((false, base.confidence));
    }
    let h = &series.parent;
    let mut confidence = Confidence::Exact;
    for w in series.chain.windows(2) {
        if w[1].dim() >= w[0].dim() {
            return Ok((false, confidence));
        }
        let cands = match p.normals_within(h, &w[0])? {
            Some(c) => c,
            None => {
                confidence = Confidence::SearchBased;
                seeded_normals_within(h, &w[0])?
            }
        };
        for cand in cands {
            if cand.dim() > w[1].dim()
                && cand.dim() < w[0].dim()
                && cand.contains_space(&w[1])
                && w[0].contains_space(&cand)
            {
                // candidate must actually be a normal subalgebra of the step
                if HopfSubalgebra::new(h.clone(), cand.clone()).is_ok()
                    && stable_under_adjoint(h, w[0].basis(), &cand, Side::Left)
                    && stable_under_adjoint(h, w[0].basis(), &cand, Side::Right)
                {
                    return Ok((false, confidence));
                }
            }
        }
    }
    Ok((true, confidence))
}

/// Seeded fallback for within-subalgebra lattices: search the standalone
/// copy, then map back into ambient coordinates.
fn seeded_normals_within(h: &Hopf, sub: &Subspace) -> Result<Vec<Subspace>> {
    let (sub_alg, inj) = materialize_subalgebra(h, sub, FactorTag::Generic)?;
    let mut out = Vec::new();
    for e in seeded_entries(&sub_alg)? {
        let ambient_rows: Vec<Vec<Scalar>> = e
            .space
            .basis()
            .iter()
            .map(|v| inj.apply(v))
            .collect();
        out.push(Subspace::canonicalize(h.field(), h.dim(), &ambient_rows)?);
    }
    out.push(Subspace::canonicalize(h.field(), h.dim(), &[h.unit_vector().to_vec()])?);
    out.push(sub.clone());
    Ok(sort_spaces(out))
}

/// Greedy lower length by repeatedly passing to a maximal (maximum
/// dimension) proper normal subalgebra, recursing through verified models.
pub fn lower_length(h: &Hopf, p: &LatticeProvider) -> Result<usize> {
    if h.dim() == 1 {
        return Ok(0);
    }
    let entries = verified_entries(h, p)?;
    if entries.is_empty() {
        return Ok(1);
    }
    let best = entries
        .iter()
        .max_by_key(|e| (e.space.dim(), std::cmp::Reverse(space_key(&e.space))))
        .expect("nonempty");
    let ((sub_alg, sub_p), _, _, _) = resolve_entry(h, best)?;
    Ok(1 + lower_length(&sub_alg, &sub_p)?)
}

/// Upper length through the dual.
pub fn upper_length(h: &Hopf, p: &LatticeProvider) -> Result<usize> {
    lower_length(&h.dual(), &dual_provider(h, p))
}

/// The canonical greedy lower composition series as an ambient chain; only
/// available when the provider answers within-subalgebra queries.
pub fn greedy_lower_chain(h: &Hopf, p: &LatticeProvider) -> Result<Option<SubnormalSeries>> {
    let mut chain = vec![Subspace::full(h.field(), h.dim())];
    loop {
        let cur = chain.last().expect("nonempty").clone();
        if cur.dim() == 1 {
            break;
        }
        let Some(cands) = p.normals_within(h, &cur)? else {
            return Ok(None);
        };
        let best = cands
            .into_iter()
            .filter(|c| c.dim() < cur.dim() && cur.contains_space(c))
            .filter(|c| {
                HopfSubalgebra::new(h.clone(), c.clone()).is_ok()
                    && stable_under_adjoint(h, cur.basis(), c, Side::Left)
                    && stable_under_adjoint(h, cur.basis(), c, Side::Right)
            })
            .max_by_key(|c| (c.dim(), std::cmp::Reverse(space_key(c))));
        match best {
            Some(b) => chain.push(b),
            None => {
                return Err(Error::Internal(
                    "no descent candidate; trivial subalgebra missing from lattice".into(),
                ))
            }
        }
    }
    Ok(Some(SubnormalSeries {
        direction: SeriesDirection::Lower,
        parent: h.clone(),
        chain,
    }))
}

/// All lower composition series reachable from the provider's lattice, as
/// ambient chains.
pub fn all_lower_composition_chains(
    h: &Hopf,
    p: &LatticeProvider,
) -> Result<Option<Vec<SubnormalSeries>>> {
    let full = Subspace::full(h.field(), h.dim());
    let mut out = Vec::new();
    let mut chain = vec![full];
    if !descend_all(h, p, &mut chain, &mut out)? {
        return Ok(None);
    }
    Ok(Some(
        out.into_iter()
            .map(|chain| SubnormalSeries {
                direction: SeriesDirection::Lower,
                parent: h.clone(),
                chain,
            })
            .collect(),
    ))
}

fn descend_all(
    h: &Hopf,
    p: &LatticeProvider,
    chain: &mut Vec<Subspace>,
    out: &mut Vec<Vec<Subspace>>,
) -> Result<bool> {
    let cur = chain.last().expect("nonempty").clone();
    if cur.dim() == 1 {
        out.push(chain.clone());
        return Ok(true);
    }
    let Some(cands) = p.normals_within(h, &cur)? else {
        return Ok(false);
    };
    let proper: Vec<Subspace> = cands
        .into_iter()
        .filter(|c| c.dim() < cur.dim() && cur.contains_space(c))
        .filter(|c| {
            HopfSubalgebra::new(h.clone(), c.clone()).is_ok()
                && stable_under_adjoint(h, cur.basis(), c, Side::Left)
                && stable_under_adjoint(h, cur.basis(), c, Side::Right)
        })
        .collect();
    let maximal: Vec<Subspace> = proper
        .iter()
        .filter(|c| {
            !proper
                .iter()
                .any(|d| d.dim() > c.dim() && d.contains_space(c))
        })
        .cloned()
        .collect();
    for m in maximal {
        chain.push(m);
        if !descend_all(h, p, chain, out)? {
            return Ok(false);
        }
        chain.pop();
    }
    Ok(true)
}

/// Jordan-Hoelder for lower composition series: all reachable series have
/// pairwise equivalent factor multisets.
pub struct LowerJhReport {
    pub series_count: usize,
    pub equivalent: bool,
    pub confidence: Confidence,
}

pub fn jh_lower_verify(h: &Hopf, p: &LatticeProvider) -> Result<LowerJhReport> {
    let Some(chains) = all_lower_composition_chains(h, p)? else {
        return Err(Error::Unsupported(
            "provider cannot enumerate within-subalgebra lattices".into(),
        ));
    };
    let mut confidence = Confidence::Exact;
    let mut all_factors = Vec::new();
    for s in &chains {
        let rep = verify_subnormal(s, p)?;
        if !rep.valid {
            return Err(Error::Internal("enumerated chain fails verification".into()));
        }
        let (is_comp, c) = is_lower_composition_series(s, p)?;
        confidence = confidence.and(c).and(rep.confidence);
        if !is_comp {
            return Err(Error::Internal("enumerated chain is not maximal".into()));
        }
        all_factors.push(rep.factors);
    }
    let mut equivalent = true;
    for w in all_factors.windows(2) {
        if !multiset_equivalent(&w[0], &w[1], false)? {
            equivalent = false;
        }
    }
    Ok(LowerJhReport {
        series_count: chains.len(),
        equivalent,
        confidence,
    })
}

/// When all factors of a lower series are simple, they agree with the
/// composition factors.
pub enum SimpleFactorsVerdict {
    Holds,
    NotApplicable,
}

pub fn simple_factors_imply_composition(
    series: &SubnormalSeries,
    p: &LatticeProvider,
) -> Result<SimpleFactorsVerdict> {
    let rep = verify_subnormal(series, p)?;
    if !rep.valid {
        return Err(Error::Domain("series is not a valid subnormal series".into()));
    }
    for f in &rep.factors {
        if !is_simple(&f.algebra, &f.provider)? {
            return Ok(SimpleFactorsVerdict::NotApplicable);
        }
    }
    let comp = composition_series(&series.parent, p)?;
    if multiset_equivalent(&rep.factors, &comp.factors, false)? {
        Ok(SimpleFactorsVerdict::Holds)
    } else {
        Err(Error::TheoremViolation(
            "simple lower factors disagree with the composition factors".into(),
        ))
    }
}

// -- Schreier refinement ---------------------------------------------------------

pub struct SchreierReport {
    pub refined_a: SubnormalSeries,
    pub refined_b: SubnormalSeries,
    pub matched_pairs: Vec<((usize, usize), bool)>,
    pub equivalent: bool,
    pub common_factor_dims: Vec<usize>,
}

/// Refine two lower subnormal series of the same algebra through the
/// double-index products and certify matching factors through the butterfly
/// isomorphism.
pub fn schreier_refine(
    s1: &SubnormalSeries,
    s2: &SubnormalSeries,
    p: &LatticeProvider,
) -> Result<SchreierReport> {
    if s1.direction != SeriesDirection::Lower || s2.direction != SeriesDirection::Lower {
        return Err(Error::Domain("refinement operates on lower series".into()));
    }
    if !s1.parent.tensor_eq(&s2.parent) {
        return Err(Error::ParentMismatch("series live in different algebras".into()));
    }
    let rep1 = verify_subnormal(s1, p)?;
    let rep2 = verify_subnormal(s2, p)?;
    if !rep1.valid || !rep2.valid {
        return Err(Error::Domain("series fail subnormal verification".into()));
    }
    let h = &s1.parent;
    let a = &s1.chain; // outermost-first, a[0] = H, a[n] = k
    let b = &s2.chain;
    let n = a.len() - 1;
    let m = b.len() - 1;
    let term = |i: usize, j: usize| -> Result<Subspace> {
        // A_{i,j} = A_{i+1} (B_j  cap A_i)
        let inter = b[j].intersect(&a[i])?;
        Ok(crate::subobjects::product_span(h, &a[i + 1], &inter).sum(&a[i + 1])?)
    };
    let term_b = |j: usize, i: usize| -> Result<Subspace> {
        let inter = a[i].intersect(&b[j])?;
        Ok(crate::subobjects::product_span(h, &b[j + 1], &inter).sum(&b[j + 1])?)
    };
    let mut chain_a = Vec::new();
    for i in 0..n {
        for j in 0..=m {
            if i > 0 && j == 0 {
                continue; // A_{i,0} duplicates A_{i-1,m}
            }
            chain_a.push(term(i, j)?);
        }
    }
    if n == 0 {
        chain_a.push(a[0].clone());
    }
    let mut chain_b = Vec::new();
    for j in 0..m {
        for i in 0..=n {
            if j > 0 && i == 0 {
                continue;
            }
            chain_b.push(term_b(j, i)?);
        }
    }
    if m == 0 {
        chain_b.push(b[0].clone());
    }
    let refined_a = SubnormalSeries {
        direction: SeriesDirection::Lower,
        parent: h.clone(),
        chain: chain_a,
    };
    let refined_b = SubnormalSeries {
        direction: SeriesDirection::Lower,
        parent: h.clone(),
        chain: chain_b,
    };
    let ra = verify_subnormal(&refined_a, p)?;
    let rb = verify_subnormal(&refined_b, p)?;
    if !ra.valid || !rb.valid {
        return Err(Error::TheoremViolation(
            "constructed refinements fail subnormal verification".into(),
        ));
    }
    // matched factors through the butterfly certificate
    let mut matched_pairs = Vec::new();
    let mut equivalent = true;
    for i in 0..n {
        for j in 0..m {
            let rep = crate::iso::butterfly(h, &a[i], &a[i + 1], &b[j], &b[j + 1])?;
            let ok = rep.pass();
            if !ok {
                equivalent = false;
            }
            matched_pairs.push(((i, j), ok));
        }
    }
    let mut common: Vec<usize> = ra
        .factors
        .iter()
        .map(Factor::dim)
        .filter(|&d| d > 1)
        .collect();
    common.sort_unstable();
    Ok(SchreierReport {
        refined_a,
        refined_b,
        matched_pairs,
        equivalent,
        common_factor_dims: common,
    })
}

// -- factor equivalence -----------------------------------------------------------

/// Three-valued equivalence verdict for composition factors.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Equiv {
    Equivalent,
    EquivalentFingerprint,
    Distinct,
    Undecided,
}

impl Equiv {
    pub fn counts_equivalent(&self, strict: bool) -> bool {
        match self {
            Equiv::Equivalent => true,
            Equiv::EquivalentFingerprint => !strict,
            _ => false,
        }
    }
}

/// Decide equivalence: provenance tags give exact group-isomorphism tests,
/// commutative-vs-cocommutative separations refute across kinds, and
/// fingerprints give a sound refutation channel otherwise.
pub fn factor_equiv(f1: &Factor, f2: &Factor, strict: bool) -> Result<Equiv> {
    if f1.dim() != f2.dim() {
        return Ok(Equiv::Distinct);
    }
    match (&f1.tag, &f2.tag) {
        (FactorTag::GroupAlgebra(g1), FactorTag::GroupAlgebra(g2)) => {
            Ok(if group_isomorphic(g1, g2)? {
                Equiv::Equivalent
            } else {
                Equiv::Distinct
            })
        }
        (FactorTag::DualGroupAlgebra(g1), FactorTag::DualGroupAlgebra(g2)) => {
            Ok(if group_isomorphic(g1, g2)? {
                Equiv::Equivalent
            } else {
                Equiv::Distinct
            })
        }
        (FactorTag::GroupAlgebra(g1), FactorTag::DualGroupAlgebra(g2))
        | (FactorTag::DualGroupAlgebra(g2), FactorTag::GroupAlgebra(g1)) => {
            if g1.order() > 1 && (!g1.is_abelian() || !g2.is_abelian()) {
                return Ok(Equiv::Distinct);
            }
            fingerprint_equiv(f1, f2, strict)
        }
        _ => fingerprint_equiv(f1, f2, strict),
    }
}

fn fingerprint_equiv(f1: &Factor, f2: &Factor, strict: bool) -> Result<Equiv> {
    match (&f1.fingerprint, &f2.fingerprint) {
        (Some(a), Some(b)) => {
            if a != b {
                Ok(Equiv::Distinct)
            } else if strict {
                Ok(Equiv::Undecided)
            } else {
                Ok(Equiv::EquivalentFingerprint)
            }
        }
        _ => Ok(Equiv::Undecided),
    }
}

/// Multiset equivalence by exhaustive matching over factor_equiv.
pub fn multiset_equivalent(fs1: &[Factor], fs2: &[Factor], strict: bool) -> Result<bool> {
    if fs1.len() != fs2.len() {
        return Ok(false);
    }
    let n = fs1.len();
    let mut adj = vec![vec![false; n]; n];
    for i in 0..n {
        for j in 0..n {
            adj[i][j] = factor_equiv(&fs1[i], &fs2[j], strict)?.counts_equivalent(strict);
        }
    }
    let mut used = vec![false; n];
    fn assign(adj: &Vec<Vec<bool>>, used: &mut Vec<bool>, i: usize) -> bool {
        if i == adj.len() {
            return true;
        }
        for j in 0..adj.len() {
            if adj[i][j] && !used[j] {
                used[j] = true;
                if assign(adj, used, i + 1) {
                    return true;
                }
                used[j] = false;
            }
        }
        false
    }
    Ok(assign(&adj, &mut used, 0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{drinfeld_double, dual_group_algebra, group_algebra};
    use crate::fixtures::sweedler;
    use crate::hopf::scalar_hopf;

    fn q() -> Field {
        Field::Q
    }

    fn named(n: &str) -> FiniteGroup {
        FiniteGroup::named(n).unwrap()
    }

    fn grouplike_span(h: &Hopf, g: &FiniteGroup, labels: &[&str]) -> Subspace {
        let gens: Vec<usize> = labels
            .iter()
            .map(|l| g.element_by_label(l).expect("label"))
            .collect();
        let elems = g.closure_of(&gens);
        Subspace::span_of_units(h.field(), h.dim(), &elems)
    }

    fn k_span(h: &Hopf) -> Subspace {
        Subspace::canonicalize(h.field(), h.dim(), &[h.unit_vector().to_vec()]).unwrap()
    }

    #[test]
    fn simplicity_examples() {
        let c5 = group_algebra(&named("C5"), q());
        assert!(is_simple(&c5, &provider_for(&c5)).unwrap());
        let c6 = group_algebra(&named("C6"), q());
        assert!(!is_simple(&c6, &provider_for(&c6)).unwrap());
        let sw = sweedler(q());
        assert!(is_simple(&sw, &LatticeProvider::Seeded).unwrap());
    }

    #[test]
    fn composition_series_of_kc6_through_both_branches() {
        let c6 = group_algebra(&named("C6"), q());
        let p = provider_for(&c6);
        let series = composition_series(&c6, &p).unwrap();
        let mut dims: Vec<usize> = series.factors.iter().map(Factor::dim).collect();
        dims.sort_unstable();
        assert_eq!(dims, vec![2, 3]);
        let jh = jordan_holder_verify(&c6, &p).unwrap();
        assert_eq!(jh.branches, 2);
        assert!(jh.equivalent);
    }

    #[test]
    fn composition_series_of_ks4() {
        let s4 = group_algebra(&named("S4"), q());
        let p = provider_for(&s4);
        let series = composition_series(&s4, &p).unwrap();
        assert_eq!(series.length(), 4);
        let mut dims: Vec<usize> = series.factors.iter().map(Factor::dim).collect();
        dims.sort_unstable();
        assert_eq!(dims, vec![2, 2, 2, 3]);
        assert_eq!(series.confidence, Confidence::Exact);
        let jh = jordan_holder_verify(&s4, &p).unwrap();
        assert_eq!(jh.branches, 2);
        assert!(jh.equivalent);
    }

    #[test]
    fn one_dimensional_algebra_has_length_zero() {
        let k = scalar_hopf(q());
        assert_eq!(length(&k, &LatticeProvider::Seeded).unwrap(), 0);
    }

    #[test]
    fn additivity_along_ks3() {
        let s3 = named("S3");
        let h = group_algebra(&s3, q());
        let p = provider_for(&h);
        let entries = p.normal_entries(&h).unwrap();
        assert_eq!(entries.len(), 1);
        let (_, _, seq, _) = resolve_entry(&h, &entries[0]).unwrap();
        assert!(additivity_check(&seq).unwrap());
    }

    #[test]
    fn sweedler_composition_factors_are_itself() {
        let sw = sweedler(q());
        let series = composition_series(&sw, &LatticeProvider::Seeded).unwrap();
        assert_eq!(series.length(), 1);
        assert_eq!(series.factors[0].dim(), 4);
        assert_eq!(series.confidence, Confidence::SearchBased);
        assert!(semisimple_factors_check(&sw, &LatticeProvider::Seeded).unwrap());
    }

    #[test]
    fn dual_factors_of_ks4() {
        let s4 = group_algebra(&named("S4"), q());
        assert!(dual_factors_check(&s4, &provider_for(&s4)).unwrap());
    }

    #[test]
    fn semisimple_factors_of_ks4() {
        let s4 = group_algebra(&named("S4"), q());
        assert!(semisimple_factors_check(&s4, &provider_for(&s4)).unwrap());
    }

    #[test]
    fn subnormal_series_verification() {
        let s4 = named("S4");
        let h = group_algebra(&s4, q());
        let p = provider_for(&h);
        let chain = vec![
            Subspace::full(q(), 24),
            grouplike_span(&h, &s4, &["(1 2 3)", "(1 2)(3 4)"]),
            grouplike_span(&h, &s4, &["(1 2)(3 4)", "(1 3)(2 4)"]),
            k_span(&h),
        ];
        let series = SubnormalSeries {
            direction: SeriesDirection::Lower,
            parent: h.clone(),
            chain,
        };
        let rep = verify_subnormal(&series, &p).unwrap();
        assert!(rep.valid);
        assert!(rep.dims_product_ok);
        let mut dims: Vec<usize> = rep.factors.iter().map(Factor::dim).collect();
        dims.sort_unstable();
        assert_eq!(dims, vec![2, 3, 4]);
        assert_eq!(rep.confidence, Confidence::Exact);
        // single-step series
        let series2 = SubnormalSeries {
            direction: SeriesDirection::Lower,
            parent: h.clone(),
            chain: vec![Subspace::full(q(), 24), k_span(&h)],
        };
        let rep2 = verify_subnormal(&series2, &p).unwrap();
        assert!(rep2.valid);
        assert_eq!(rep2.factors.len(), 1);
        assert_eq!(rep2.factors[0].dim(), 24);
        // non-normal step is rejected
        let s3 = named("S3");
        let h3 = group_algebra(&s3, q());
        let bad = SubnormalSeries {
            direction: SeriesDirection::Lower,
            parent: h3.clone(),
            chain: vec![
                Subspace::full(q(), 6),
                grouplike_span(&h3, &s3, &["(1 2)"]),
                k_span(&h3),
            ],
        };
        let rep3 = verify_subnormal(&bad, &provider_for(&h3)).unwrap();
        assert!(!rep3.valid);
        assert_eq!(rep3.step_errors[0].0, 0);
    }

    #[test]
    fn lower_composition_detection() {
        let s4 = named("S4");
        let h = group_algebra(&s4, q());
        let p = provider_for(&h);
        // k < kV4 < kS4 is refinable through kA4
        let series = SubnormalSeries {
            direction: SeriesDirection::Lower,
            parent: h.clone(),
            chain: vec![
                Subspace::full(q(), 24),
                grouplike_span(&h, &s4, &["(1 2)(3 4)", "(1 3)(2 4)"]),
                k_span(&h),
            ],
        };
        let (is_comp, conf) = is_lower_composition_series(&series, &p).unwrap();
        assert!(!is_comp);
        assert_eq!(conf, Confidence::Exact);
        // k < kC2 is a lower composition series
        let c2 = group_algebra(&named("C2"), q());
        let series2 = SubnormalSeries {
            direction: SeriesDirection::Lower,
            parent: c2.clone(),
            chain: vec![Subspace::full(q(), 2), k_span(&c2)],
        };
        assert!(is_lower_composition_series(&series2, &provider_for(&c2)).unwrap().0);
    }

    #[test]
    fn lengths_of_group_fixtures() {
        let s4 = group_algebra(&named("S4"), q());
        let p = provider_for(&s4);
        assert_eq!(lower_length(&s4, &p).unwrap(), 4);
        // the upper length is the lower length of the dual, the chief length
        assert_eq!(upper_length(&s4, &p).unwrap(), 3);
        let ds4 = dual_group_algebra(&named("S4"), q());
        let dp = provider_for(&ds4);
        assert_eq!(lower_length(&ds4, &dp).unwrap(), 3);
        assert_eq!(upper_length(&ds4, &dp).unwrap(), 4);
        assert_eq!(length(&ds4, &dp).unwrap(), 4);
    }

    #[test]
    fn greedy_chain_matches_recursive_length() {
        for h in [
            group_algebra(&named("S4"), q()),
            dual_group_algebra(&named("S4"), q()),
            group_algebra(&named("C6"), q()),
        ] {
            let p = provider_for(&h);
            let chain = greedy_lower_chain(&h, &p).unwrap().unwrap();
            assert_eq!(chain.chain.len() - 1, lower_length(&h, &p).unwrap());
            let (is_comp, _) = is_lower_composition_series(&chain, &p).unwrap();
            assert!(is_comp);
        }
    }

    #[test]
    fn dual_group_s4_lower_factors() {
        let h = dual_group_algebra(&named("S4"), q());
        let p = provider_for(&h);
        let chain = greedy_lower_chain(&h, &p).unwrap().unwrap();
        let rep = verify_subnormal(&chain, &p).unwrap();
        assert!(rep.valid);
        let mut dims: Vec<usize> = rep.factors.iter().map(Factor::dim).collect();
        dims.sort_unstable();
        assert_eq!(dims, vec![2, 3, 4]);
        // the dimension-four factor is a dual group algebra on V4 and is not
        // simple; its chief factor downstairs is characteristically simple
        let f4 = rep.factors.iter().find(|f| f.dim() == 4).unwrap();
        match &f4.tag {
            FactorTag::DualGroupAlgebra(g) => {
                assert!(group_isomorphic(g, &named("V4")).unwrap());
                assert!(crate::groups::is_characteristically_simple(g).unwrap());
            }
            other => panic!("expected a dual group tag, got {}", other.describe()),
        }
        assert!(!is_simple(&f4.algebra, &f4.provider).unwrap());
    }

    #[test]
    fn jh_lower_on_kc6_and_dual_s4() {
        let c6 = group_algebra(&named("C6"), q());
        let rep = jh_lower_verify(&c6, &provider_for(&c6)).unwrap();
        assert_eq!(rep.series_count, 2);
        assert!(rep.equivalent);
        let ds4 = dual_group_algebra(&named("S4"), q());
        let rep2 = jh_lower_verify(&ds4, &provider_for(&ds4)).unwrap();
        assert_eq!(rep2.series_count, 1);
        assert!(rep2.equivalent);
    }

    #[test]
    fn simple_factors_imply_composition_examples() {
        let s4 = named("S4");
        let h = group_algebra(&s4, q());
        let p = provider_for(&h);
        let chain = greedy_lower_chain(&h, &p).unwrap().unwrap();
        assert!(matches!(
            simple_factors_imply_composition(&chain, &p).unwrap(),
            SimpleFactorsVerdict::Holds
        ));
        let ds4 = dual_group_algebra(&s4, q());
        let dp = provider_for(&ds4);
        let dchain = greedy_lower_chain(&ds4, &dp).unwrap().unwrap();
        assert!(matches!(
            simple_factors_imply_composition(&dchain, &dp).unwrap(),
            SimpleFactorsVerdict::NotApplicable
        ));
        // a simple parent: the one-step series works vacuously
        let c5 = group_algebra(&named("C5"), q());
        let schain = SubnormalSeries {
            direction: SeriesDirection::Lower,
            parent: c5.clone(),
            chain: vec![Subspace::full(q(), 5), k_span(&c5)],
        };
        assert!(matches!(
            simple_factors_imply_composition(&schain, &provider_for(&c5)).unwrap(),
            SimpleFactorsVerdict::Holds
        ));
    }

    #[test]
    fn schreier_on_kc6() {
        let c6g = named("C6");
        let h = group_algebra(&c6g, q());
        let p = provider_for(&h);
        let s1 = SubnormalSeries {
            direction: SeriesDirection::Lower,
            parent: h.clone(),
            chain: vec![
                Subspace::full(q(), 6),
                grouplike_span(&h, &c6g, &["g3"]),
                k_span(&h),
            ],
        };
        let s2 = SubnormalSeries {
            direction: SeriesDirection::Lower,
            parent: h.clone(),
            chain: vec![
                Subspace::full(q(), 6),
                grouplike_span(&h, &c6g, &["g2"]),
                k_span(&h),
            ],
        };
        let rep = schreier_refine(&s1, &s2, &p).unwrap();
        assert!(rep.equivalent);
        assert_eq!(rep.common_factor_dims, vec![2, 3]);
        // refining a series against itself is the identity situation
        let rep2 = schreier_refine(&s1, &s1, &p).unwrap();
        assert!(rep2.equivalent);
        assert_eq!(rep2.common_factor_dims, vec![2, 3]);
    }

    #[test]
    fn fingerprints_separate_kc3_from_its_dual() {
        let c3 = named("C3");
        let kg = group_algebra(&c3, q());
        let dual = dual_group_algebra(&c3, q());
        let f1 = IsoFingerprint::compute(&kg).unwrap();
        let f2 = IsoFingerprint::compute(&dual).unwrap();
        assert_eq!(f1.rational_characters, 1);
        assert_eq!(f2.rational_characters, 3);
        assert_ne!(f1, f2);
    }

    #[test]
    fn factor_equiv_examples() {
        let p = LatticeProvider::Seeded;
        let kc2a = Factor::new(&group_algebra(&named("C2"), q()), p.clone()).unwrap();
        let kc2b = Factor::new(&group_algebra(&named("C2"), q()), p.clone()).unwrap();
        assert_eq!(factor_equiv(&kc2a, &kc2b, true).unwrap(), Equiv::Equivalent);
        let kc3 = Factor::new(&group_algebra(&named("C3"), q()), p.clone()).unwrap();
        let dkc3 = Factor::new(&dual_group_algebra(&named("C3"), q()), p.clone()).unwrap();
        assert_eq!(factor_equiv(&kc3, &dkc3, false).unwrap(), Equiv::Distinct);
        let kv4 = Factor::new(&group_algebra(&named("V4"), q()), p.clone()).unwrap();
        let kc4 = Factor::new(&group_algebra(&named("C4"), q()), p.clone()).unwrap();
        assert_eq!(factor_equiv(&kv4, &kc4, false).unwrap(), Equiv::Distinct);
        // generic tags fall back to fingerprints
        let sw1 = Factor::new(&sweedler(q()), p.clone()).unwrap();
        let sw2 = Factor::new(&sweedler(q()), p.clone()).unwrap();
        assert_eq!(
            factor_equiv(&sw1, &sw2, false).unwrap(),
            Equiv::EquivalentFingerprint
        );
        assert_eq!(factor_equiv(&sw1, &sw2, true).unwrap(), Equiv::Undecided);
    }

    #[test]
    fn drinfeld_double_c2_length_two() {
        let d = drinfeld_double(&named("C2"), q()).unwrap();
        let p = provider_for(&d.hopf);
        assert_eq!(length(&d.hopf, &p).unwrap(), 2);
        assert_eq!(lower_length(&d.hopf, &p).unwrap(), 2);
        assert_eq!(upper_length(&d.hopf, &p).unwrap(), 2);
    }

    #[test]
    fn drinfeld_double_s3_lengths() {
        let d = drinfeld_double(&named("S3"), q()).unwrap();
        let p = provider_for(&d.hopf);
        // composition length is twice the length of S3
        assert_eq!(length(&d.hopf, &p).unwrap(), 4);
        assert!(additivity_check(&d.sequence).unwrap());
    }
}
