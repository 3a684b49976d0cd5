//! Acceptance suite: one test per criterion, each printing a PASS/FAIL line
//! (run with `--nocapture` to see them). All comparisons are exact.

use std::sync::OnceLock;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use hopfkit_core::constructions::{
    abelian_ext_lower_series, abelian_extension, bismash_s3_pair, drinfeld_double,
    dual_group_algebra, group_algebra, AbelianExtension,
};
use hopfkit_core::fixtures::sweedler;
use hopfkit_core::formats;
use hopfkit_core::groups::{
    group_isomorphic, is_characteristically_simple, maximal_subgroup_chains, FiniteGroup,
};
use hopfkit_core::hopf::{FactorTag, Hopf};
use hopfkit_core::iso::{butterfly, dim_formula_check, second_isomorphism, third_isomorphism};
use hopfkit_core::scalar::Field;
use hopfkit_core::series::{
    additivity_check, composition_series, dual_factors_check, dual_provider, factor_equiv,
    greedy_lower_chain, is_lower_composition_series, is_simple, jh_lower_verify,
    jordan_holder_verify, length, lower_length, multiset_equivalent, provider_for, schreier_refine,
    semisimple_factors_check, upper_length, verify_subnormal, Equiv, SeriesDirection,
    SubnormalSeries,
};
use hopfkit_core::subobjects::{coinvariants, quotient_by, HopfSubalgebra, Side};
use hopfkit_core::subspace::Subspace;

fn q() -> Field {
    Field::Q
}

fn named(name: &str) -> FiniteGroup {
    FiniteGroup::named(name).expect("named group")
}

fn d_a4() -> &'static AbelianExtension {
    static CELL: OnceLock<AbelianExtension> = OnceLock::new();
    CELL.get_or_init(|| drinfeld_double(&named("A4"), q()).expect("D(A4) builds"))
}

fn grouplike_span(h: &Hopf, g: &FiniteGroup, labels: &[&str]) -> Subspace {
    let gens: Vec<usize> = labels
        .iter()
        .map(|l| g.element_by_label(l).expect("label"))
        .collect();
    Subspace::span_of_units(h.field(), h.dim(), &g.closure_of(&gens))
}

fn k_span(h: &Hopf) -> Subspace {
    Subspace::canonicalize(h.field(), h.dim(), &[h.unit_vector().to_vec()]).expect("unit span")
}

fn report(criterion: &str, pass: bool, detail: &str) {
    println!(
        "criterion {criterion}: {} — {detail}",
        if pass { "PASS" } else { "FAIL" }
    );
    assert!(pass, "criterion {criterion} failed: {detail}");
}

#[test]
fn acceptance_01_axiom_suite() {
    let groups = ["C2", "C6", "S3", "A4", "S4", "A5"];
    let mut all = true;
    for name in groups {
        let g = named(name);
        all &= group_algebra(&g, q()).verify_axioms().pass();
        all &= dual_group_algebra(&g, q()).verify_axioms().pass();
    }
    for name in ["C2", "S3", "A4"] {
        let d = if name == "A4" {
            d_a4().hopf.clone()
        } else {
            drinfeld_double(&named(name), q()).expect("double builds").hopf
        };
        all &= d.verify_axioms().pass();
    }
    let bismash = abelian_extension(&bismash_s3_pair(), q()).expect("bismash builds");
    all &= bismash.hopf.verify_axioms().pass();
    all &= sweedler(q()).verify_axioms().pass();
    report(
        "01",
        all,
        "axioms pass for kG and its dual over six groups, three doubles, the bismash extension and the four-dimensional sample",
    );
}

#[test]
fn acceptance_02_jordan_holder_for_ks4_and_kc6() {
    let s4 = group_algebra(&named("S4"), q());
    let p4 = provider_for(&s4);
    let jh4 = jordan_holder_verify(&s4, &p4).expect("jh runs");
    let series = composition_series(&s4, &p4).expect("series");
    let mut dims: Vec<usize> = series.factors.iter().map(|f| f.dim()).collect();
    dims.sort_unstable();
    let mut tags_ok = true;
    for f in &series.factors {
        match &f.tag {
            FactorTag::GroupAlgebra(g) => {
                let expect = if f.dim() == 2 { named("C2") } else { named("C3") };
                tags_ok &= group_isomorphic(g, &expect).expect("iso test");
            }
            _ => tags_ok = false,
        }
    }
    let c6 = group_algebra(&named("C6"), q());
    let jh6 = jordan_holder_verify(&c6, &provider_for(&c6)).expect("jh runs");
    let pass = jh4.branches == 2
        && jh4.equivalent
        && dims == vec![2, 2, 2, 3]
        && series.length() == 4
        && tags_ok
        && jh6.branches == 2
        && jh6.equivalent;
    report(
        "02",
        pass,
        &format!(
            "kS4 branches {} equivalent {} factors {:?} length {}; kC6 branches {} equivalent {}",
            jh4.branches, jh4.equivalent, dims, series.length(), jh6.branches, jh6.equivalent
        ),
    );
}

#[test]
fn acceptance_03_additivity_and_duality() {
    let d = d_a4();
    let p = provider_for(&d.hopf);
    let len = length(&d.hopf, &p).expect("length");
    let additive = additivity_check(&d.sequence).expect("additivity");
    let sub_len = length(&d.sequence.i.source, &provider_for(&d.sequence.i.source)).expect("len");
    let quot_len = length(&d.sequence.pi.target, &provider_for(&d.sequence.pi.target)).expect("len");
    let s4 = group_algebra(&named("S4"), q());
    let dual_ok = dual_factors_check(&s4, &provider_for(&s4)).expect("dual factors");
    let pass = len == 6 && additive && sub_len == 3 && quot_len == 3 && dual_ok;
    report(
        "03",
        pass,
        &format!(
            "length(D(A4)) = {len} = {sub_len} + {quot_len}; factors of the dual of kS4 are the duals of its factors: {dual_ok}"
        ),
    );
}

#[test]
fn acceptance_04_three_pairwise_distinct_lengths() {
    let d = d_a4();
    let p = provider_for(&d.hopf);
    let len = length(&d.hopf, &p).expect("length");
    let low = lower_length(&d.hopf, &p).expect("lower");
    let up = upper_length(&d.hopf, &p).expect("upper");
    let dual_route = lower_length(&d.hopf.dual(), &dual_provider(&d.hopf, &p)).expect("dual route");
    let pass = len == 6 && low == 5 && up == 4 && up == dual_route && low <= len && up <= len;
    report(
        "04",
        pass,
        &format!("D(A4): length {len}, lower {low}, upper {up} (dual route {dual_route}) — pairwise distinct"),
    );
}

#[test]
fn acceptance_05_non_simple_lower_factor_of_dual_s4() {
    let h = dual_group_algebra(&named("S4"), q());
    let p = provider_for(&h);
    let chain = greedy_lower_chain(&h, &p)
        .expect("chain computes")
        .expect("exact lattice");
    let (is_comp, _) = is_lower_composition_series(&chain, &p).expect("maximality");
    let rep = verify_subnormal(&chain, &p).expect("verify");
    let mut dims: Vec<usize> = rep.factors.iter().map(|f| f.dim()).collect();
    dims.sort_unstable();
    let mut pass = is_comp && rep.valid && chain.chain.len() - 1 == 3 && dims == vec![2, 3, 4];
    let mut detail = format!("lower series of the dual of kS4 has factors {dims:?}");
    // every factor is a dual group algebra on the chief factors of S4
    let f4 = rep.factors.iter().find(|f| f.dim() == 4);
    match f4.map(|f| (&f.tag, f)) {
        Some((FactorTag::DualGroupAlgebra(g), f)) => {
            let v4_iso = group_isomorphic(g, &named("V4")).expect("iso");
            let c2c2 = named("C2").direct_product(&named("C2")).expect("product");
            let char_simple = is_characteristically_simple(g).expect("check")
                && group_isomorphic(g, &c2c2).expect("iso");
            let non_simple = !is_simple(&f.algebra, &f.provider).expect("simplicity");
            pass &= v4_iso && char_simple && non_simple;
            detail.push_str(&format!(
                "; dimension-4 factor: dual group algebra on V4 (char-simple {char_simple}), non-simple {non_simple}"
            ));
        }
        _ => {
            pass = false;
            detail.push_str("; dimension-4 factor missing or mistagged");
        }
    }
    report("05", pass, &detail);
}

#[test]
fn acceptance_06_second_isomorphism_randomized() {
    let pool = ["S3", "C6", "D8", "A4", "D12", "C12", "S4"];
    let mut rng = ChaCha8Rng::seed_from_u64(20260810);
    let mut done = 0;
    let mut all = true;
    while done < 25 {
        let g = named(pool[rng.gen_range(0..pool.len())]);
        let subs = g.subgroups();
        let a_elems = &subs[rng.gen_range(0..subs.len())];
        let b_elems = &subs[rng.gen_range(0..subs.len())];
        let normalizer = g.normalizer(b_elems);
        if !a_elems.iter().all(|e| normalizer.binary_search(e).is_ok()) {
            continue;
        }
        let h = group_algebra(&g, q());
        let a = HopfSubalgebra::new(h.clone(), Subspace::span_of_units(q(), g.order(), a_elems))
            .expect("subalgebra");
        let b = HopfSubalgebra::new(h.clone(), Subspace::span_of_units(q(), g.order(), b_elems))
            .expect("subalgebra");
        let iso = second_isomorphism(&a, &b).expect("second isomorphism");
        all &= iso.certificate.verified;
        all &= dim_formula_check(&a, &b).expect("dimension formula");
        done += 1;
    }
    // the named third-isomorphism instance
    let s4 = named("S4");
    let h = group_algebra(&s4, q());
    let a4 = grouplike_span(&h, &s4, &["(1 2 3)", "(1 2)(3 4)"]);
    let v4 = grouplike_span(&h, &s4, &["(1 2)(3 4)", "(1 3)(2 4)"]);
    let third = third_isomorphism(&h, &a4, &v4).expect("third isomorphism");
    all &= third.part_i.verified && third.part_ii.verified;
    all &= third.part_i.lhs.dim() == 2 && third.part_ii.lhs.dim() == 3;
    report(
        "06",
        all,
        "25 randomized second-isomorphism certificates with exact dimension formula; third isomorphism on (kS4, kA4, kV4)",
    );
}

#[test]
fn acceptance_07_butterfly_randomized() {
    let s4 = named("S4");
    let h = group_algebra(&s4, q());
    let subs = s4.subgroups();
    let mut rng = ChaCha8Rng::seed_from_u64(777);
    let mut done = 0;
    let mut all = true;
    while done < 10 {
        let a_elems = subs[rng.gen_range(0..subs.len())].clone();
        let b_elems = subs[rng.gen_range(0..subs.len())].clone();
        let normal_in = |outer: &Vec<usize>| -> Vec<Vec<usize>> {
            subs.iter()
                .filter(|s| {
                    s.iter().all(|e| outer.binary_search(e).is_ok())
                        && s4.is_normal_in(s, outer)
                })
                .cloned()
                .collect()
        };
        let a_normals = normal_in(&a_elems);
        let b_normals = normal_in(&b_elems);
        let ap = a_normals[rng.gen_range(0..a_normals.len())].clone();
        let bp = b_normals[rng.gen_range(0..b_normals.len())].clone();
        let span = |e: &[usize]| Subspace::span_of_units(q(), 24, e);
        let rep = butterfly(&h, &span(&a_elems), &span(&ap), &span(&b_elems), &span(&bp))
            .expect("butterfly");
        all &= rep.part_i && rep.part_ii && rep.part_iii && rep.pass();
        done += 1;
    }
    report(
        "07",
        all,
        "10 randomized butterfly quadruples over kS4 verify parts (i)-(iv), part (iii) as canonical subspace equality",
    );
}

#[test]
fn acceptance_08_schreier_refinement() {
    let s4 = named("S4");
    let h = group_algebra(&s4, q());
    let p = provider_for(&h);
    let make = |mid: Subspace| SubnormalSeries {
        direction: SeriesDirection::Lower,
        parent: h.clone(),
        chain: vec![Subspace::full(q(), 24), mid, k_span(&h)],
    };
    let s_v4 = make(grouplike_span(&h, &s4, &["(1 2)(3 4)", "(1 3)(2 4)"]));
    let s_a4 = make(grouplike_span(&h, &s4, &["(1 2 3)", "(1 2)(3 4)"]));
    let rep = schreier_refine(&s_v4, &s_a4, &p).expect("refinement");
    // the interleaved refinements are k < kV4 < kA4 < kS4 on both sides up
    // to trivial repeats, with nontrivial factors of dimensions 4, 3, 2;
    // every matched factor pair carries a butterfly certificate
    let mut pass = rep.equivalent && rep.common_factor_dims == vec![2, 3, 4];
    pass &= rep.matched_pairs.iter().all(|(_, ok)| *ok);
    // all lower composition series of the dual of kS4 are pairwise equivalent
    let dual = dual_group_algebra(&s4, q());
    let jh = jh_lower_verify(&dual, &provider_for(&dual)).expect("jh lower");
    pass &= jh.equivalent;
    report(
        "08",
        pass,
        &format!(
            "refinements through kV4 and kA4 are equivalent with nontrivial factors {:?}; {} lower series of the dual of kS4 pairwise equivalent",
            rep.common_factor_dims, jh.series_count
        ),
    );
}

#[test]
fn acceptance_09_simplicity_edge_cases() {
    let c5 = group_algebra(&named("C5"), q());
    let mut pass = is_simple(&c5, &provider_for(&c5)).expect("simple");
    let sw = sweedler(q());
    let seeded = hopfkit_core::series::LatticeProvider::Seeded;
    pass &= is_simple(&sw, &seeded).expect("simple");
    pass &= !sw.is_semisimple().expect("trace form");
    pass &= !sw.is_cosemisimple().expect("dual trace form");
    let sw_series = composition_series(&sw, &seeded).expect("series");
    pass &= sw_series.length() == 1 && sw_series.factors[0].dim() == 4;
    // semisimplicity matches the factors on every fixture
    let mut fixtures: Vec<Hopf> = Vec::new();
    for name in ["C2", "C6", "S3", "A4", "S4", "A5"] {
        let g = named(name);
        fixtures.push(group_algebra(&g, q()));
        fixtures.push(dual_group_algebra(&g, q()));
    }
    fixtures.push(drinfeld_double(&named("C2"), q()).expect("double").hopf);
    fixtures.push(drinfeld_double(&named("S3"), q()).expect("double").hopf);
    fixtures.push(d_a4().hopf.clone());
    fixtures.push(abelian_extension(&bismash_s3_pair(), q()).expect("bismash").hopf);
    fixtures.push(sw.clone());
    for h in &fixtures {
        pass &= semisimple_factors_check(h, &provider_for(h)).expect("factor semisimplicity");
    }
    report(
        "09",
        pass,
        "kC5 simple; the four-dimensional sample is simple, non-semisimple and non-cosemisimple with itself as only factor; semisimplicity matches factors on all fixtures",
    );
}

#[test]
fn acceptance_10_a5_maximal_chain_counterexample() {
    let a5 = named("A5");
    let (chains, lengths) = maximal_subgroup_chains(&a5);
    let mut pass = lengths.contains(&3) && lengths.contains(&4);
    let find = |gens: &[&str]| -> Vec<usize> {
        let ids: Vec<usize> = gens
            .iter()
            .map(|g| a5.element_by_label(g).expect("generator"))
            .collect();
        a5.closure_of(&ids)
    };
    let chain_a = vec![
        vec![0],
        find(&["(1 2 3)"]),
        find(&["(1 2 3)", "(1 2)(4 5)"]),
        (0..60).collect::<Vec<usize>>(),
    ];
    let chain_b = vec![
        vec![0],
        find(&["(1 2)(3 4)"]),
        find(&["(1 2)(3 4)", "(1 4)(2 3)"]),
        find(&["(1 2 3)", "(1 2)(3 4)"]),
        (0..60).collect::<Vec<usize>>(),
    ];
    pass &= chains.iter().any(|c| c.chain == chain_a);
    pass &= chains.iter().any(|c| c.chain == chain_b);
    // the displayed subgroients really are S3, V4 and A4 up to isomorphism
    pass &= group_isomorphic(
        &a5.subgroup_group(&find(&["(1 2 3)", "(1 2)(4 5)"])).expect("subgroup"),
        &named("S3"),
    )
    .expect("iso");
    pass &= group_isomorphic(
        &a5.subgroup_group(&find(&["(1 2)(3 4)", "(1 4)(2 3)"])).expect("subgroup"),
        &named("V4"),
    )
    .expect("iso");
    pass &= group_isomorphic(
        &a5.subgroup_group(&find(&["(1 2 3)", "(1 2)(3 4)"])).expect("subgroup"),
        &named("A4"),
    )
    .expect("iso");
    report(
        "10",
        pass,
        &format!(
            "A5 maximal subgroup chains occur in lengths {:?}, including the displayed length-3 and length-4 chains",
            lengths
        ),
    );
}

#[test]
fn acceptance_11_round_trips() {
    let mut pass = true;
    let mut fixtures: Vec<Hopf> = Vec::new();
    for name in ["C2", "C6", "S3", "A4", "S4", "A5"] {
        let g = named(name);
        fixtures.push(group_algebra(&g, q()));
        fixtures.push(dual_group_algebra(&g, q()));
    }
    fixtures.push(drinfeld_double(&named("C2"), q()).expect("double").hopf);
    fixtures.push(drinfeld_double(&named("S3"), q()).expect("double").hopf);
    for h in &fixtures {
        let p = provider_for(h);
        for entry in p.normal_entries(h).expect("lattice") {
            let quo = quotient_by(h, &entry.space).expect("quotient");
            // quotient then coinvariants recovers the subalgebra
            let co = coinvariants(&quo.projection, Side::Left).expect("coinvariants");
            pass &= co == entry.space;
            // coinvariants then quotient recovers the kernel
            let quo2 = quotient_by(h, &co).expect("quotient");
            pass &= quo2.kernel_ideal == quo.projection.kernel();
        }
        // JSON round trip is byte-identical and re-verifies
        let text = formats::emit_hopf_json(h);
        let parsed = formats::parse_hopf_json(&text).expect("parse back");
        pass &= parsed.tensor_eq(h);
        pass &= formats::emit_hopf_json(&parsed) == text;
        if h.dim() <= 24 {
            pass &= parsed.verify_axioms().pass();
        }
    }
    report(
        "11",
        pass,
        "coinvariant/quotient round trips hold for every normal subalgebra of every group-built fixture; files round-trip byte-identically and re-verify",
    );
}
