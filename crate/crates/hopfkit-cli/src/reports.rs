//! Report shapes. JSON reports are deterministic (no timing); text reports
//! are for humans and carry the elapsed time.

use std::time::Duration;

use serde::Serialize;

use hopfkit_core::groups::{FiniteGroup, GroupSeries};
use hopfkit_core::hopf::AxiomReport;
use hopfkit_core::iso::{ButterflyReport, IsoCertificate, ThirdIso};
use hopfkit_core::series::{
    CompositionSeries, Confidence, Factor, SchreierReport, SeriesReport as CoreSeriesReport,
};

#[derive(Serialize)]
pub struct VerifyReport {
    pub command: String,
    pub dim: usize,
    pub verified: bool,
    pub axioms: Vec<AxiomLine>,
}

#[derive(Serialize)]
pub struct AxiomLine {
    pub axiom: String,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Vec<usize>>,
}

impl VerifyReport {
    pub fn from_axioms(dim: usize, report: &AxiomReport) -> Self {
        VerifyReport {
            command: "verify".into(),
            dim,
            verified: report.pass(),
            axioms: report
                .checks
                .iter()
                .map(|c| AxiomLine {
                    axiom: c.axiom.name().into(),
                    pass: c.pass(),
                    witness: c.witness.clone(),
                })
                .collect(),
        }
    }

    pub fn text(&self, elapsed: Duration) -> String {
        let mut s = format!("verify: dim {} -> {}\n", self.dim, verdict(self.verified));
        for a in &self.axioms {
            s.push_str(&format!(
                "  {:<24} {}{}\n",
                a.axiom,
                verdict(a.pass),
                a.witness
                    .as_ref()
                    .map(|w| format!("  witness {w:?}"))
                    .unwrap_or_default()
            ));
        }
        s.push_str(&format!("elapsed: {elapsed:?}\n"));
        s
    }
}

#[derive(Serialize)]
pub struct FactorLine {
    pub dim: usize,
    pub tag: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub fingerprint: Option<String>,
}

impl FactorLine {
    pub fn from_factor(f: &Factor) -> Self {
        FactorLine {
            dim: f.dim(),
            tag: f.tag.describe(),
            fingerprint: f.fingerprint.as_ref().map(|fp| fp.describe()),
        }
    }
}

#[derive(Serialize)]
pub struct FactorsReport {
    pub command: String,
    pub length: usize,
    pub verified: bool,
    pub lattice: String,
    pub factors: Vec<FactorLine>,
}

impl FactorsReport {
    pub fn from_series(series: &CompositionSeries) -> Self {
        let mut factors: Vec<FactorLine> =
            series.factors.iter().map(FactorLine::from_factor).collect();
        factors.sort_by(|a, b| (a.dim, &a.tag).cmp(&(b.dim, &b.tag)));
        FactorsReport {
            command: "factors".into(),
            length: series.length(),
            verified: true,
            lattice: series.confidence.label().into(),
            factors,
        }
    }

    pub fn text(&self, elapsed: Duration) -> String {
        let mut s = format!(
            "factors: length {} (lattice {})\n",
            self.length, self.lattice
        );
        for f in &self.factors {
            s.push_str(&format!("  dim {:<4} {}\n", f.dim, f.tag));
        }
        s.push_str(&format!("elapsed: {elapsed:?}\n"));
        s
    }
}

#[derive(Serialize)]
pub struct LengthsReport {
    pub length: usize,
    pub lower: usize,
    pub upper: usize,
}

impl LengthsReport {
    pub fn text(&self, elapsed: Duration) -> String {
        format!(
            "length {}  lower {}  upper {}\nelapsed: {elapsed:?}\n",
            self.length, self.lower, self.upper
        )
    }
}

#[derive(Serialize)]
pub struct SeriesVerifyReport {
    pub command: String,
    pub valid: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lower_composition: Option<bool>,
    pub lattice: String,
    pub length: usize,
    pub factors: Vec<FactorLine>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub step_errors: Vec<(usize, String)>,
}

impl SeriesVerifyReport {
    pub fn new(rep: &CoreSeriesReport, lower: Option<(bool, Confidence)>) -> Self {
        let lattice = lower
            .map(|(_, c)| rep.confidence.and(c))
            .unwrap_or(rep.confidence);
        SeriesVerifyReport {
            command: "series-verify".into(),
            valid: rep.valid,
            lower_composition: lower.map(|(b, _)| b),
            lattice: lattice.label().into(),
            length: rep.factors.len(),
            factors: rep.factors.iter().map(FactorLine::from_factor).collect(),
            step_errors: rep
                .step_errors
                .iter()
                .map(|(i, m)| (*i, m.clone()))
                .collect(),
        }
    }

    pub fn text(&self, elapsed: Duration) -> String {
        let mut s = format!(
            "series-verify: {}  steps {}  lattice {}\n",
            verdict(self.valid),
            self.length,
            self.lattice
        );
        if let Some(lc) = self.lower_composition {
            s.push_str(&format!("  lower composition series: {}\n", verdict(lc)));
        }
        for f in &self.factors {
            s.push_str(&format!("  factor dim {:<4} {}\n", f.dim, f.tag));
        }
        for (i, m) in &self.step_errors {
            s.push_str(&format!("  step {i}: {m}\n"));
        }
        s.push_str(&format!("elapsed: {elapsed:?}\n"));
        s
    }
}

#[derive(Serialize)]
pub struct RefineReport {
    pub command: String,
    pub equivalent: bool,
    pub refined_steps_a: usize,
    pub refined_steps_b: usize,
    pub common_factor_dims: Vec<usize>,
    pub matched_pairs: Vec<MatchedPairLine>,
}

#[derive(Serialize)]
pub struct MatchedPairLine {
    pub a_step: (usize, usize),
    pub verified: bool,
}

impl RefineReport {
    pub fn new(rep: &SchreierReport) -> Self {
        RefineReport {
            command: "refine".into(),
            equivalent: rep.equivalent,
            refined_steps_a: rep.refined_a.chain.len() - 1,
            refined_steps_b: rep.refined_b.chain.len() - 1,
            common_factor_dims: rep.common_factor_dims.clone(),
            matched_pairs: rep
                .matched_pairs
                .iter()
                .map(|((i, j), ok)| MatchedPairLine {
                    a_step: (*i, *j),
                    verified: *ok,
                })
                .collect(),
        }
    }

    pub fn text(&self, elapsed: Duration) -> String {
        format!(
            "refine: {}  steps {} / {}  common factors {:?}\nelapsed: {elapsed:?}\n",
            verdict(self.equivalent),
            self.refined_steps_a,
            self.refined_steps_b,
            self.common_factor_dims
        )
    }
}

#[derive(Serialize)]
pub struct ButterflyJson {
    pub theorem: String,
    pub verified: bool,
    pub dims: (usize, usize),
    pub parts: ButterflyParts,
}

#[derive(Serialize)]
pub struct ButterflyParts {
    pub i: bool,
    pub ii: bool,
    pub iii: bool,
    pub iv: bool,
}

impl ButterflyJson {
    pub fn new(rep: &ButterflyReport) -> Self {
        ButterflyJson {
            theorem: "butterfly".into(),
            verified: rep.pass(),
            dims: rep.wing_dims,
            parts: ButterflyParts {
                i: rep.part_i,
                ii: rep.part_ii,
                iii: rep.part_iii,
                iv: rep.part_iv.as_ref().map(|c| c.verified).unwrap_or(false),
            },
        }
    }

    pub fn text(&self, elapsed: Duration) -> String {
        format!(
            "butterfly: {}  (i {}, ii {}, iii {}, iv {})\nelapsed: {elapsed:?}\n",
            verdict(self.verified),
            self.parts.i,
            self.parts.ii,
            self.parts.iii,
            self.parts.iv
        )
    }
}

#[derive(Serialize)]
pub struct IsoJson {
    pub theorem: String,
    pub verified: bool,
    pub dims: Vec<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Vec<String>>,
}

impl IsoJson {
    pub fn certificate(theorem: &str, cert: &IsoCertificate) -> Self {
        IsoJson {
            theorem: theorem.into(),
            verified: cert.verified,
            dims: vec![cert.lhs.dim(), cert.rhs.dim()],
            witness: None,
        }
    }

    pub fn third(out: &ThirdIso) -> Self {
        IsoJson {
            theorem: "third-isomorphism".into(),
            verified: out.part_i.verified && out.part_ii.verified,
            dims: vec![
                out.part_i.lhs.dim(),
                out.part_i.rhs.dim(),
                out.part_ii.lhs.dim(),
                out.part_ii.rhs.dim(),
            ],
            witness: None,
        }
    }

    pub fn text(&self, elapsed: Duration) -> String {
        format!(
            "{}: {}  dims {:?}\nelapsed: {elapsed:?}\n",
            self.theorem,
            verdict(self.verified),
            self.dims
        )
    }
}

#[derive(Serialize)]
pub struct GroupReport {
    pub command: String,
    pub group: String,
    pub order: usize,
    pub lengths: Vec<usize>,
    pub series: Vec<Vec<Vec<String>>>,
}

impl GroupReport {
    pub fn from_series(g: &FiniteGroup, series: Vec<GroupSeries>) -> Self {
        GroupReport {
            command: "group".into(),
            group: g.canonical_id(),
            order: g.order(),
            lengths: {
                let mut v: Vec<usize> = series.iter().map(GroupSeries::len).collect();
                v.sort_unstable();
                v.dedup();
                v
            },
            series: series
                .iter()
                .map(|s| {
                    s.chain
                        .iter()
                        .map(|term| term.iter().map(|&e| g.label(e).to_string()).collect())
                        .collect()
                })
                .collect(),
        }
    }

    pub fn from_chains(
        g: &FiniteGroup,
        chains: Vec<GroupSeries>,
        lengths: std::collections::BTreeSet<usize>,
    ) -> Self {
        let mut r = GroupReport::from_series(g, chains);
        r.lengths = lengths.into_iter().collect();
        r
    }

    pub fn text(&self, elapsed: Duration) -> String {
        format!(
            "group {} (order {}): {} series, lengths {:?}\nelapsed: {elapsed:?}\n",
            self.group,
            self.order,
            self.series.len(),
            self.lengths
        )
    }
}

fn verdict(b: bool) -> &'static str {
    if b {
        "PASS"
    } else {
        "FAIL"
    }
}
