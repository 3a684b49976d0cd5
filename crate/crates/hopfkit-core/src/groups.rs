//! Finite group oracle: Cayley tables, subgroup lattices, composition and
//! chief series, stable series under an auxiliary action, isomorphism testing
//! and maximal subgroup chains.
//!
//! Everything is exhaustive and exact; the supported order cap is 60.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const MAX_GROUP_ORDER: usize = 60;

/// A finite group given by its Cayley table. The identity is always stored at
/// index 0. Group axioms are verified on construction.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct FiniteGroup {
    order: usize,
    labels: Vec<String>,
    table: Vec<Vec<usize>>,
    #[serde(skip)]
    inverse: Vec<usize>,
}

impl FiniteGroup {
    pub fn from_table(labels: Vec<String>, table: Vec<Vec<usize>>) -> Result<Self> {
        let order = table.len();
        if order == 0 {
            return Err(Error::Input("empty Cayley table".into()));
        }
        if order > MAX_GROUP_ORDER {
            return Err(Error::Input(format!(
                "group order {order} exceeds the cap {MAX_GROUP_ORDER}"
            )));
        }
        if labels.len() != order {
            return Err(Error::Input("label count does not match order".into()));
        }
        for row in &table {
            if row.len() != order || row.iter().any(|&x| x >= order) {
                return Err(Error::Input("malformed Cayley table row".into()));
            }
        }
        // locate the identity
        let mut identity = None;
        for e in 0..order {
            if (0..order).all(|a| table[e][a] == a && table[a][e] == a) {
                identity = Some(e);
                break;
            }
        }
        let Some(e) = identity else {
            return Err(Error::Input("table has no identity element".into()));
        };
        // move identity to index 0
        let (labels, table) = if e == 0 {
            (labels, table)
        } else {
            let mut perm: Vec<usize> = (0..order).collect();
            perm.swap(0, e);
            let mut inv_perm = vec![0; order];
            for (new, &old) in perm.iter().enumerate() {
                inv_perm[old] = new;
            }
            let new_labels = perm.iter().map(|&old| labels[old].clone()).collect();
            let new_table = (0..order)
                .map(|a| {
                    (0..order)
                        .map(|b| inv_perm[table[perm[a]][perm[b]]])
                        .collect()
                })
                .collect();
            (new_labels, new_table)
        };
        // associativity and inverses
        for a in 0..order {
            for b in 0..order {
                for c in 0..order {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(Error::Input(format!(
                            "table is not associative at ({a},{b},{c})"
                        )));
                    }
                }
            }
        }
        let mut inverse = vec![usize::MAX; order];
        for a in 0..order {
            match (0..order).find(|&b| table[a][b] == 0 && table[b][a] == 0) {
                Some(b) => inverse[a] = b,
                None => {
                    return Err(Error::Input(format!("element {a} has no inverse")));
                }
            }
        }
        Ok(FiniteGroup {
            order,
            labels,
            table,
            inverse,
        })
    }

    /// Group generated by permutations in cycle notation, e.g. `"(1 2)(3 4)"`.
    pub fn from_permutations(gens: &[&str]) -> Result<Self> {
        let parsed: Vec<Vec<usize>> = gens
            .iter()
            .map(|g| parse_cycles(g))
            .collect::<Result<_>>()?;
        let degree = parsed.iter().map(|p| p.len()).max().unwrap_or(1);
        let gens: Vec<Vec<usize>> = parsed
            .into_iter()
            .map(|mut p| {
                while p.len() < degree {
                    p.push(p.len());
                }
                p
            })
            .collect();
        let identity: Vec<usize> = (0..degree).collect();
        let mut elements = vec![identity.clone()];
        let mut index: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
        index.insert(identity, 0);
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            for g in &gens {
                let prod = compose_perm(&elements[i], g);
                if !index.contains_key(&prod) {
                    if elements.len() >= MAX_GROUP_ORDER {
                        return Err(Error::Input(format!(
                            "generated group exceeds the order cap {MAX_GROUP_ORDER}"
                        )));
                    }
                    index.insert(prod.clone(), elements.len());
                    elements.push(prod);
                    queue.push_back(elements.len() - 1);
                }
            }
        }
        let order = elements.len();
        let table = (0..order)
            .map(|a| {
                (0..order)
                    .map(|b| index[&compose_perm(&elements[a], &elements[b])])
                    .collect()
            })
            .collect();
        let labels = elements.iter().map(|p| format_cycles(p)).collect();
        FiniteGroup::from_table(labels, table)
    }

    /// Named constructions: `Cn`, `Sn` (n <= 5), `An` (n <= 5), `Dn`
    /// (dihedral of order n, n even) and `V4`.
    pub fn named(name: &str) -> Result<Self> {
        let name = name.trim();
        if name == "V4" {
            return FiniteGroup::from_permutations(&["(1 2)", "(3 4)"]);
        }
        let (kind, num) = name.split_at(1);
        let n: usize = num
            .parse()
            .map_err(|_| Error::Input(format!("unknown group name {name:?}")))?;
        match kind {
            "C" => {
                if n == 0 || n > MAX_GROUP_ORDER {
                    return Err(Error::Input(format!("C{n} outside supported range")));
                }
                let labels = (0..n)
                    .map(|k| if k == 0 { "e".into() } else { format!("g{k}") })
                    .collect();
                let table = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
                FiniteGroup::from_table(labels, table)
            }
            "S" => match n {
                1 => FiniteGroup::from_permutations(&[]),
                2..=5 => {
                    let cycle = format!("({})", (1..=n).map(|i| i.to_string()).collect::<Vec<_>>().join(" "));
                    FiniteGroup::from_permutations(&["(1 2)", &cycle])
                }
                _ => Err(Error::Input(format!("S{n} outside supported range"))),
            },
            "A" => match n {
                1 | 2 => FiniteGroup::from_permutations(&[]),
                3 => FiniteGroup::from_permutations(&["(1 2 3)"]),
                4 => FiniteGroup::from_permutations(&["(1 2)(3 4)", "(1 2 3)"]),
                5 => FiniteGroup::from_permutations(&["(1 2 3)", "(1 2 3 4 5)"]),
                _ => Err(Error::Input(format!("A{n} outside supported range"))),
            },
            "D" => {
                if n % 2 != 0 || n < 4 || n > MAX_GROUP_ORDER {
                    return Err(Error::Input(format!(
                        "D{n} must have even order between 4 and {MAX_GROUP_ORDER}"
                    )));
                }
                let m = n / 2;
                if m == 2 {
                    return FiniteGroup::from_permutations(&["(1 2)", "(3 4)"]);
                }
                let rot = format!("({})", (1..=m).map(|i| i.to_string()).collect::<Vec<_>>().join(" "));
                let mut refl = String::new();
                let mut lo = 2;
                let mut hi = m;
                while lo < hi {
                    refl.push_str(&format!("({lo} {hi})"));
                    lo += 1;
                    hi -= 1;
                }
                if refl.is_empty() {
                    refl = "(1 2)".into();
                }
                FiniteGroup::from_permutations(&[&rot, &refl])
            }
            _ => Err(Error::Input(format!("unknown group name {name:?}"))),
        }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, a: usize) -> &str {
        &self.labels[a]
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn element_by_label(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut n = 1;
        while x != 0 {
            x = self.mul(x, a);
            n += 1;
        }
        n
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (0..self.order).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn conjugate(&self, g: usize, a: usize) -> usize {
        self.mul(self.mul(g, a), self.inv(g))
    }

    /// Sorted multiset of element orders, the cheap isomorphism invariant.
    pub fn order_profile(&self) -> Vec<usize> {
        let mut v: Vec<usize> = (0..self.order).map(|a| self.element_order(a)).collect();
        v.sort_unstable();
        v
    }

    pub fn center(&self) -> Vec<usize> {
        (0..self.order)
            .filter(|&a| (0..self.order).all(|b| self.mul(a, b) == self.mul(b, a)))
            .collect()
    }

    pub fn derived_subgroup(&self) -> Vec<usize> {
        let gens: Vec<usize> = (0..self.order)
            .flat_map(|a| {
                (0..self.order).map(move |b| (a, b))
            })
            .map(|(a, b)| {
                self.mul(
                    self.mul(a, b),
                    self.mul(self.inv(a), self.inv(b)),
                )
            })
            .collect();
        self.closure_of(&gens)
    }

    /// Deterministic isomorphism-invariant identifier used in provenance
    /// tags: order, element-order profile, abelian flag, center and derived
    /// subgroup sizes.
    pub fn canonical_id(&self) -> String {
        let mut profile: BTreeMap<usize, usize> = BTreeMap::new();
        for o in self.order_profile() {
            *profile.entry(o).or_insert(0) += 1;
        }
        let prof = profile
            .iter()
            .map(|(o, c)| format!("{o}x{c}"))
            .collect::<Vec<_>>()
            .join(".");
        format!(
            "o{}:{}:{}:z{}:d{}",
            self.order,
            prof,
            if self.is_abelian() { "ab" } else { "na" },
            self.center().len(),
            self.derived_subgroup().len()
        )
    }

    pub fn closure_of(&self, seed: &[usize]) -> Vec<usize> {
        let mut in_set = vec![false; self.order];
        in_set[0] = true;
        let mut elems = vec![0usize];
        let mut queue: VecDeque<usize> = VecDeque::from([0]);
        let push = |x: usize, in_set: &mut Vec<bool>, elems: &mut Vec<usize>, queue: &mut VecDeque<usize>| {
            if !in_set[x] {
                in_set[x] = true;
                elems.push(x);
                queue.push_back(x);
            }
        };
        for &s in seed {
            push(s, &mut in_set, &mut elems, &mut queue);
        }
        while let Some(a) = queue.pop_front() {
            let snapshot = elems.clone();
            for b in snapshot {
                push(self.mul(a, b), &mut in_set, &mut elems, &mut queue);
                push(self.mul(b, a), &mut in_set, &mut elems, &mut queue);
            }
        }
        elems.sort_unstable();
        elems
    }

    /// All subgroups, each as a sorted element index set, in a deterministic
    /// order (by size, then lexicographically).
    pub fn subgroups(&self) -> Vec<Vec<usize>> {
        let trivial = vec![0usize];
        let mut found: BTreeSet<Vec<usize>> = BTreeSet::new();
        found.insert(trivial.clone());
        let mut queue = VecDeque::from([trivial]);
        while let Some(sub) = queue.pop_front() {
            for g in 1..self.order {
                if sub.binary_search(&g).is_ok() {
                    continue;
                }
                let mut seed = sub.clone();
                seed.push(g);
                let ext = self.closure_of(&seed);
                if found.insert(ext.clone()) {
                    queue.push_back(ext);
                }
            }
        }
        let mut out: Vec<Vec<usize>> = found.into_iter().collect();
        out.sort_by_key(|s| (s.len(), s.clone()));
        out
    }

    pub fn is_subgroup(&self, elems: &[usize]) -> bool {
        if elems.is_empty() || elems[0] != 0 && !elems.contains(&0) {
            return false;
        }
        elems
            .iter()
            .all(|&a| elems.iter().all(|&b| elems.binary_search(&self.mul(a, b)).is_ok()))
    }

    pub fn is_normal_subgroup(&self, elems: &[usize]) -> bool {
        (0..self.order).all(|g| {
            elems
                .iter()
                .all(|&a| elems.binary_search(&self.conjugate(g, a)).is_ok())
        })
    }

    /// Normality of `sub` inside the subgroup `within` (both sorted sets).
    pub fn is_normal_in(&self, sub: &[usize], within: &[usize]) -> bool {
        within.iter().all(|&g| {
            sub.iter()
                .all(|&a| sub.binary_search(&self.conjugate(g, a)).is_ok())
        })
    }

    pub fn normal_subgroups(&self) -> Vec<Vec<usize>> {
        self.subgroups()
            .into_iter()
            .filter(|s| self.is_normal_subgroup(s))
            .collect()
    }

    pub fn normalizer(&self, sub: &[usize]) -> Vec<usize> {
        (0..self.order)
            .filter(|&g| {
                sub.iter()
                    .all(|&a| sub.binary_search(&self.conjugate(g, a)).is_ok())
            })
            .collect()
    }

    /// The subgroup as an abstract group, with inherited labels.
    pub fn subgroup_group(&self, elems: &[usize]) -> Result<FiniteGroup> {
        if !self.is_subgroup(elems) {
            return Err(Error::Input("element set is not a subgroup".into()));
        }
        let pos: BTreeMap<usize, usize> = elems.iter().enumerate().map(|(i, &e)| (e, i)).collect();
        let labels = elems.iter().map(|&e| self.labels[e].clone()).collect();
        let table = elems
            .iter()
            .map(|&a| elems.iter().map(|&b| pos[&self.mul(a, b)]).collect())
            .collect();
        FiniteGroup::from_table(labels, table)
    }

    /// The quotient by a normal subgroup, cosets labelled by their minimal
    /// representative.
    pub fn quotient_group(&self, normal: &[usize]) -> Result<(FiniteGroup, Vec<usize>)> {
        if !self.is_subgroup(normal) || !self.is_normal_subgroup(normal) {
            return Err(Error::Input("quotient requires a normal subgroup".into()));
        }
        let mut coset_of = vec![usize::MAX; self.order];
        let mut reps: Vec<usize> = Vec::new();
        for g in 0..self.order {
            if coset_of[g] != usize::MAX {
                continue;
            }
            let c = reps.len();
            for &n in normal {
                coset_of[self.mul(g, n)] = c;
            }
            reps.push(g);
        }
        let labels = reps
            .iter()
            .map(|&r| format!("[{}]", self.labels[r]))
            .collect();
        let table = reps
            .iter()
            .map(|&a| reps.iter().map(|&b| coset_of[self.mul(a, b)]).collect())
            .collect();
        Ok((FiniteGroup::from_table(labels, table)?, coset_of))
    }

    pub fn direct_product(&self, other: &FiniteGroup) -> Result<FiniteGroup> {
        let n = self.order * other.order;
        if n > MAX_GROUP_ORDER {
            return Err(Error::Input("direct product exceeds order cap".into()));
        }
        let idx = |a: usize, b: usize| a * other.order + b;
        let labels = (0..self.order)
            .flat_map(|a| {
                (0..other.order).map(move |b| (a, b))
            })
            .map(|(a, b)| format!("({},{})", self.labels[a], other.labels[b]))
            .collect();
        let mut table = vec![vec![0usize; n]; n];
        for a1 in 0..self.order {
            for b1 in 0..other.order {
                for a2 in 0..self.order {
                    for b2 in 0..other.order {
                        table[idx(a1, b1)][idx(a2, b2)] =
                            idx(self.mul(a1, a2), other.mul(b1, b2));
                    }
                }
            }
        }
        FiniteGroup::from_table(labels, table)
    }
}

fn compose_perm(a: &[usize], b: &[usize]) -> Vec<usize> {
    // (a*b)(x) = a(b(x))
    (0..a.len()).map(|x| a[b[x]]).collect()
}

fn parse_cycles(s: &str) -> Result<Vec<usize>> {
    let s = s.trim();
    if s.is_empty() || s == "e" || s == "()" {
        return Ok(vec![0]);
    }
    let mut max_point = 0usize;
    let mut cycles: Vec<Vec<usize>> = Vec::new();
    let mut rest = s;
    while !rest.is_empty() {
        let rest_trim = rest.trim_start();
        if !rest_trim.starts_with('(') {
            return Err(Error::Input(format!("bad cycle notation {s:?}")));
        }
        let close = rest_trim
            .find(')')
            .ok_or_else(|| Error::Input(format!("unbalanced parenthesis in {s:?}")))?;
        let body = &rest_trim[1..close];
        let pts: Vec<usize> = body
            .split_whitespace()
            .map(|t| {
                t.parse::<usize>()
                    .map_err(|_| Error::Input(format!("bad point {t:?} in {s:?}")))
            })
            .collect::<Result<_>>()?;
        if pts.iter().any(|&p| p == 0) {
            return Err(Error::Input("cycle points are 1-based".into()));
        }
        max_point = max_point.max(pts.iter().copied().max().unwrap_or(0));
        cycles.push(pts);
        rest = &rest_trim[close + 1..];
    }
    let mut perm: Vec<usize> = (0..max_point).collect();
    for cyc in &cycles {
        for w in 0..cyc.len() {
            let from = cyc[w] - 1;
            let to = cyc[(w + 1) % cyc.len()] - 1;
            perm[from] = to;
        }
    }
    Ok(perm)
}

fn format_cycles(perm: &[usize]) -> String {
    let mut seen = vec![false; perm.len()];
    let mut out = String::new();
    for start in 0..perm.len() {
        if seen[start] || perm[start] == start {
            continue;
        }
        let mut cyc = vec![start];
        seen[start] = true;
        let mut x = perm[start];
        while x != start {
            seen[x] = true;
            cyc.push(x);
            x = perm[x];
        }
        out.push('(');
        out.push_str(
            &cyc.iter()
                .map(|p| (p + 1).to_string())
                .collect::<Vec<_>>()
                .join(" "),
        );
        out.push(')');
    }
    if out.is_empty() {
        out.push('e');
    }
    out
}

/// Kind of a subgroup series.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GroupSeriesKind {
    Composition,
    Chief,
    MaximalChain,
    GammaComposition,
}

/// An ascending chain of subgroups `{e} = S_0 < S_1 < ... < S_n = G`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GroupSeries {
    pub kind: GroupSeriesKind,
    pub chain: Vec<Vec<usize>>,
}

impl GroupSeries {
    pub fn len(&self) -> usize {
        self.chain.len().saturating_sub(1)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// All composition series of `g`: ascending chains with each term normal in
/// its successor and no subnormal insertion possible.
pub fn composition_series_group(g: &FiniteGroup) -> Vec<GroupSeries> {
    let subs = g.subgroups();
    let mut out = Vec::new();
    let full: Vec<usize> = (0..g.order()).collect();
    let mut chain = vec![full];
    descend_composition(g, &subs, &mut chain, &mut out);
    for s in &mut out {
        s.chain.reverse();
    }
    out
}

fn descend_composition(
    g: &FiniteGroup,
    subs: &[Vec<usize>],
    chain: &mut Vec<Vec<usize>>,
    out: &mut Vec<GroupSeries>,
) {
    let top = chain.last().unwrap().clone();
    if top.len() == 1 {
        out.push(GroupSeries {
            kind: GroupSeriesKind::Composition,
            chain: chain.clone(),
        });
        return;
    }
    // maximal proper subgroups normal in `top`
    let candidates: Vec<&Vec<usize>> = subs
        .iter()
        .filter(|s| {
            s.len() < top.len()
                && s.iter().all(|e| top.binary_search(e).is_ok())
                && g.is_normal_in(s, &top)
        })
        .collect();
    let maximal: Vec<&Vec<usize>> = candidates
        .iter()
        .filter(|s| {
            !candidates
                .iter()
                .any(|t| t.len() > s.len() && s.iter().all(|e| t.binary_search(e).is_ok()) && g.is_normal_in(t, &top))
        })
        .copied()
        .collect();
    for m in maximal {
        chain.push(m.clone());
        descend_composition(g, subs, chain, out);
        chain.pop();
    }
}

/// All chief series of `g`: ascending chains of subgroups normal in the whole
/// group with no normal-in-G subgroup strictly between consecutive terms.
pub fn chief_series_group(g: &FiniteGroup) -> Vec<GroupSeries> {
    let normals = g.normal_subgroups();
    let mut out = Vec::new();
    let mut chain = vec![vec![0usize]];
    ascend_chief(g, &normals, &mut chain, &mut out);
    out
}

fn ascend_chief(
    g: &FiniteGroup,
    normals: &[Vec<usize>],
    chain: &mut Vec<Vec<usize>>,
    out: &mut Vec<GroupSeries>,
) {
    let bottom = chain.last().unwrap().clone();
    if bottom.len() == g.order() {
        out.push(GroupSeries {
            kind: GroupSeriesKind::Chief,
            chain: chain.clone(),
        });
        return;
    }
    let above: Vec<&Vec<usize>> = normals
        .iter()
        .filter(|s| s.len() > bottom.len() && bottom.iter().all(|e| s.binary_search(e).is_ok()))
        .collect();
    let minimal: Vec<&Vec<usize>> = above
        .iter()
        .filter(|s| {
            !above
                .iter()
                .any(|t| t.len() < s.len() && t.iter().all(|e| s.binary_search(e).is_ok()))
        })
        .copied()
        .collect();
    for m in minimal {
        chain.push(m.clone());
        ascend_chief(g, normals, chain, out);
        chain.pop();
    }
}

/// Stable-series oracle: maximal chains of subgroups of `f` that are stable
/// under the permutation action `act[t][x]` of an auxiliary group of order
/// `act.len()`, each term normal in its successor, admitting no stable
/// subnormal insertion.
pub fn gamma_composition_series(f: &FiniteGroup, act: &[Vec<usize>]) -> Result<Vec<GroupSeries>> {
    for row in act {
        if row.len() != f.order() || row.iter().any(|&x| x >= f.order()) {
            return Err(Error::Input("action table shape mismatch".into()));
        }
    }
    let stable_subs: Vec<Vec<usize>> = f
        .subgroups()
        .into_iter()
        .filter(|s| {
            act.iter()
                .all(|row| s.iter().all(|&x| s.binary_search(&row[x]).is_ok()))
        })
        .collect();
    let mut out = Vec::new();
    let full: Vec<usize> = (0..f.order()).collect();
    let mut chain = vec![full];
    descend_gamma(f, &stable_subs, &mut chain, &mut out);
    for s in &mut out {
        s.chain.reverse();
    }
    Ok(out)
}

fn descend_gamma(
    f: &FiniteGroup,
    stable_subs: &[Vec<usize>],
    chain: &mut Vec<Vec<usize>>,
    out: &mut Vec<GroupSeries>,
) {
    let top = chain.last().unwrap().clone();
    if top.len() == 1 {
        out.push(GroupSeries {
            kind: GroupSeriesKind::GammaComposition,
            chain: chain.clone(),
        });
        return;
    }
    let candidates: Vec<&Vec<usize>> = stable_subs
        .iter()
        .filter(|s| {
            s.len() < top.len()
                && s.iter().all(|e| top.binary_search(e).is_ok())
                && f.is_normal_in(s, &top)
        })
        .collect();
    let maximal: Vec<&Vec<usize>> = candidates
        .iter()
        .filter(|s| {
            !candidates
                .iter()
                .any(|t| t.len() > s.len() && s.iter().all(|e| t.binary_search(e).is_ok()))
        })
        .copied()
        .collect();
    for m in maximal {
        chain.push(m.clone());
        descend_gamma(f, stable_subs, chain, out);
        chain.pop();
    }
}

/// All maximal chains `{e} = G_0 < G_1 < ... < G_n = G` in the full subgroup
/// lattice (steps need not be normal), together with the set of lengths.
pub fn maximal_subgroup_chains(g: &FiniteGroup) -> (Vec<GroupSeries>, BTreeSet<usize>) {
    let subs = g.subgroups();
    let mut out = Vec::new();
    let full: Vec<usize> = (0..g.order()).collect();
    let mut chain = vec![full];
    descend_maximal(&subs, &mut chain, &mut out);
    let mut lengths = BTreeSet::new();
    for s in &mut out {
        s.chain.reverse();
        lengths.insert(s.len());
    }
    (out, lengths)
}

fn descend_maximal(subs: &[Vec<usize>], chain: &mut Vec<Vec<usize>>, out: &mut Vec<GroupSeries>) {
    let top = chain.last().unwrap().clone();
    if top.len() == 1 {
        out.push(GroupSeries {
            kind: GroupSeriesKind::MaximalChain,
            chain: chain.clone(),
        });
        return;
    }
    let proper: Vec<&Vec<usize>> = subs
        .iter()
        .filter(|s| s.len() < top.len() && s.iter().all(|e| top.binary_search(e).is_ok()))
        .collect();
    let maximal: Vec<&Vec<usize>> = proper
        .iter()
        .filter(|s| {
            !proper
                .iter()
                .any(|t| t.len() > s.len() && s.iter().all(|e| t.binary_search(e).is_ok()))
        })
        .copied()
        .collect();
    for m in maximal {
        chain.push(m.clone());
        descend_maximal(subs, chain, out);
        chain.pop();
    }
}

/// Exact isomorphism test by generator-image search with order-profile
/// pruning. Orders must be at most the cap.
pub fn group_isomorphic(g1: &FiniteGroup, g2: &FiniteGroup) -> Result<bool> {
    if g1.order() > MAX_GROUP_ORDER || g2.order() > MAX_GROUP_ORDER {
        return Err(Error::Input("isomorphism test beyond order cap".into()));
    }
    if g1.order() != g2.order() || g1.order_profile() != g2.order_profile() {
        return Ok(false);
    }
    // small generating set of g1, greedily
    let mut gens: Vec<usize> = Vec::new();
    let mut closed = vec![0usize];
    for a in 1..g1.order() {
        if closed.binary_search(&a).is_err() {
            gens.push(a);
            let mut seed = closed.clone();
            seed.push(a);
            closed = g1.closure_of(&seed);
            if closed.len() == g1.order() {
                break;
            }
        }
    }
    // express every element as a word over the generators via BFS
    let mut parent: Vec<Option<(usize, usize)>> = vec![None; g1.order()]; // (prev, gen idx)
    let mut reached = vec![false; g1.order()];
    reached[0] = true;
    let mut queue = VecDeque::from([0usize]);
    while let Some(a) = queue.pop_front() {
        for (gi, &g) in gens.iter().enumerate() {
            let b = g1.mul(a, g);
            if !reached[b] {
                reached[b] = true;
                parent[b] = Some((a, gi));
                queue.push_back(b);
            }
        }
    }
    let mut images = vec![0usize; gens.len()];
    Ok(try_images(g1, g2, &gens, &parent, &mut images, 0))
}

fn try_images(
    g1: &FiniteGroup,
    g2: &FiniteGroup,
    gens: &[usize],
    parent: &[Option<(usize, usize)>],
    images: &mut [usize],
    k: usize,
) -> bool {
    if k == gens.len() {
        // induced map from words; verify bijective homomorphism
        let mut phi = vec![usize::MAX; g1.order()];
        phi[0] = 0;
        // fill by BFS order implied by parent pointers
        let mut remaining = g1.order() - 1;
        while remaining > 0 {
            let mut progressed = false;
            for a in 1..g1.order() {
                if phi[a] != usize::MAX {
                    continue;
                }
                if let Some((prev, gi)) = parent[a] {
                    if phi[prev] != usize::MAX {
                        phi[a] = g2.mul(phi[prev], images[gi]);
                        remaining -= 1;
                        progressed = true;
                    }
                }
            }
            if !progressed {
                return false;
            }
        }
        let mut seen = vec![false; g2.order()];
        for &y in phi.iter() {
            if seen[y] {
                return false;
            }
            seen[y] = true;
        }
        for a in 0..g1.order() {
            for b in 0..g1.order() {
                if phi[g1.mul(a, b)] != g2.mul(phi[a], phi[b]) {
                    return false;
                }
            }
        }
        return true;
    }
    let want = g1.element_order(gens[k]);
    for y in 0..g2.order() {
        if g2.element_order(y) == want {
            images[k] = y;
            if try_images(g1, g2, gens, parent, images, k + 1) {
                return true;
            }
        }
    }
    false
}

/// A finite group is characteristically simple iff it is a direct power of a
/// simple group. Within the order cap this means: elementary abelian p-group,
/// or a simple group itself.
pub fn is_characteristically_simple(g: &FiniteGroup) -> Result<bool> {
    if g.order() == 1 {
        return Ok(false);
    }
    if g.is_abelian() {
        // must be C_p^k: build the candidate and compare
        let n = g.order() as u64;
        let mut p = 2u64;
        while p * p <= n && n % p != 0 {
            p += 1;
        }
        if n % p != 0 {
            p = n; // n prime
        }
        let mut m = n;
        while m % p == 0 {
            m /= p;
        }
        if m != 1 {
            return Ok(false);
        }
        let cp = FiniteGroup::named(&format!("C{p}"))?;
        let mut candidate = cp.clone();
        while candidate.order() < g.order() {
            candidate = candidate.direct_product(&cp)?;
        }
        group_isomorphic(g, &candidate)
    } else {
        Ok(g.normal_subgroups().len() == 2)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn named_groups_have_expected_orders() {
        for (name, order) in [
            ("C2", 2),
            ("C6", 6),
            ("S3", 6),
            ("S4", 24),
            ("A4", 12),
            ("A5", 60),
            ("D8", 8),
            ("D12", 12),
            ("V4", 4),
        ] {
            assert_eq!(FiniteGroup::named(name).unwrap().order(), order, "{name}");
        }
    }

    #[test]
    fn from_permutations_closure() {
        let a4 = FiniteGroup::from_permutations(&["(1 2)(3 4)", "(1 2 3)"]).unwrap();
        assert_eq!(a4.order(), 12);
        assert!(group_isomorphic(&a4, &FiniteGroup::named("A4").unwrap()).unwrap());
    }

    #[test]
    fn non_associative_table_rejected() {
        // a "table" where row products are garbage
        let table = vec![vec![0, 1, 2], vec![1, 2, 1], vec![2, 0, 0]];
        let labels = vec!["e".into(), "a".into(), "b".into()];
        assert!(FiniteGroup::from_table(labels, table).is_err());
    }

    #[test]
    fn subgroup_counts_match_literature() {
        assert_eq!(FiniteGroup::named("S4").unwrap().subgroups().len(), 30);
        assert_eq!(FiniteGroup::named("A4").unwrap().subgroups().len(), 10);
        assert_eq!(FiniteGroup::named("A5").unwrap().subgroups().len(), 59);
        assert_eq!(FiniteGroup::named("C6").unwrap().subgroups().len(), 4);
    }

    #[test]
    fn normal_subgroups_of_s4() {
        let s4 = FiniteGroup::named("S4").unwrap();
        let normals = s4.normal_subgroups();
        let sizes: Vec<usize> = normals.iter().map(|n| n.len()).collect();
        assert_eq!(sizes, vec![1, 4, 12, 24]);
    }

    #[test]
    fn normal_subgroups_of_abelian_and_simple() {
        assert_eq!(FiniteGroup::named("C6").unwrap().normal_subgroups().len(), 4);
        let a5 = FiniteGroup::named("A5").unwrap();
        assert_eq!(a5.normal_subgroups().len(), 2);
    }

    #[test]
    fn composition_factors_of_a4_and_s4() {
        let a4 = FiniteGroup::named("A4").unwrap();
        for series in composition_series_group(&a4) {
            let mut factor_orders: Vec<usize> = series
                .chain
                .windows(2)
                .map(|w| w[1].len() / w[0].len())
                .collect();
            factor_orders.sort_unstable();
            assert_eq!(factor_orders, vec![2, 2, 3]);
        }
        let s4 = FiniteGroup::named("S4").unwrap();
        let series = composition_series_group(&s4);
        assert!(!series.is_empty());
        for s in &series {
            let mut orders: Vec<usize> = s.chain.windows(2).map(|w| w[1].len() / w[0].len()).collect();
            orders.sort_unstable();
            assert_eq!(orders, vec![2, 2, 2, 3]);
        }
    }

    #[test]
    fn chief_factors_of_a4() {
        let a4 = FiniteGroup::named("A4").unwrap();
        let chief = chief_series_group(&a4);
        assert_eq!(chief.len(), 1);
        let orders: Vec<usize> = chief[0]
            .chain
            .windows(2)
            .map(|w| w[1].len() / w[0].len())
            .collect();
        assert_eq!(orders, vec![4, 3]);
    }

    #[test]
    fn chief_equals_composition_for_abelian() {
        let c6 = FiniteGroup::named("C6").unwrap();
        let chief: BTreeSet<Vec<Vec<usize>>> =
            chief_series_group(&c6).into_iter().map(|s| s.chain).collect();
        let comp: BTreeSet<Vec<Vec<usize>>> =
            composition_series_group(&c6).into_iter().map(|s| s.chain).collect();
        assert_eq!(chief, comp);
    }

    #[test]
    fn group_jordan_holder_self_test() {
        for name in ["C6", "A4", "S4", "D12"] {
            let g = FiniteGroup::named(name).unwrap();
            let series = composition_series_group(&g);
            let mut profiles: BTreeSet<Vec<usize>> = BTreeSet::new();
            for s in &series {
                let mut orders: Vec<usize> =
                    s.chain.windows(2).map(|w| w[1].len() / w[0].len()).collect();
                orders.sort_unstable();
                profiles.insert(orders);
            }
            assert_eq!(profiles.len(), 1, "{name}");
        }
    }

    #[test]
    fn chief_factors_are_characteristically_simple() {
        for name in ["A4", "S4"] {
            let g = FiniteGroup::named(name).unwrap();
            for series in chief_series_group(&g) {
                for w in series.chain.windows(2) {
                    let sub = g.subgroup_group(&w[1]).unwrap();
                    let lower: Vec<usize> = w[0]
                        .iter()
                        .map(|e| w[1].binary_search(e).unwrap())
                        .collect();
                    let (factor, _) = sub.quotient_group(&lower).unwrap();
                    assert!(is_characteristically_simple(&factor).unwrap(), "{name}");
                }
            }
        }
    }

    #[test]
    fn gamma_series_trivial_action_is_composition() {
        let a4 = FiniteGroup::named("A4").unwrap();
        let trivial: Vec<Vec<usize>> = vec![(0..a4.order()).collect()];
        let gamma: BTreeSet<Vec<Vec<usize>>> = gamma_composition_series(&a4, &trivial)
            .unwrap()
            .into_iter()
            .map(|s| s.chain)
            .collect();
        let comp: BTreeSet<Vec<Vec<usize>>> = composition_series_group(&a4)
            .into_iter()
            .map(|s| s.chain)
            .collect();
        assert_eq!(gamma, comp);
    }

    #[test]
    fn gamma_series_adjoint_action_gives_chief_like_series() {
        let a4 = FiniteGroup::named("A4").unwrap();
        let adj: Vec<Vec<usize>> = (0..a4.order())
            .map(|g| (0..a4.order()).map(|x| a4.conjugate(g, x)).collect())
            .collect();
        let gamma = gamma_composition_series(&a4, &adj).unwrap();
        // conjugation-stable = normal, so the chains are the chief chains
        let chief: BTreeSet<Vec<Vec<usize>>> = chief_series_group(&a4)
            .into_iter()
            .map(|s| s.chain)
            .collect();
        let got: BTreeSet<Vec<Vec<usize>>> = gamma.into_iter().map(|s| s.chain).collect();
        assert_eq!(got, chief);
    }

    #[test]
    fn gamma_series_c3_on_c2() {
        let c2 = FiniteGroup::named("C2").unwrap();
        let trivial: Vec<Vec<usize>> = vec![(0..2).collect(); 3];
        let out = gamma_composition_series(&c2, &trivial).unwrap();
        assert_eq!(out.len(), 1);
        assert_eq!(out[0].len(), 1);
    }

    #[test]
    fn isomorphism_examples() {
        let v4 = FiniteGroup::named("V4").unwrap();
        let c4 = FiniteGroup::named("C4").unwrap();
        assert!(!group_isomorphic(&v4, &c4).unwrap());
        let s3 = FiniteGroup::named("S3").unwrap();
        let h = FiniteGroup::from_permutations(&["(1 2 3)", "(1 2)(4 5)"]).unwrap();
        assert!(group_isomorphic(&h, &s3).unwrap());
        assert!(group_isomorphic(&s3, &s3).unwrap());
    }

    #[test]
    fn a5_maximal_chain_lengths_include_3_and_4() {
        let a5 = FiniteGroup::named("A5").unwrap();
        let (chains, lengths) = maximal_subgroup_chains(&a5);
        assert!(lengths.contains(&3) && lengths.contains(&4));
        // the two displayed chains occur among the maximal chains
        let find = |gens: &[&str]| -> Vec<usize> {
            let ids: Vec<usize> = gens
                .iter()
                .map(|g| a5.element_by_label(g).expect("generator present"))
                .collect();
            a5.closure_of(&ids)
        };
        let c3 = find(&["(1 2 3)"]);
        let s3ish = find(&["(1 2 3)", "(1 2)(4 5)"]);
        let want_a: Vec<Vec<usize>> = vec![vec![0], c3, s3ish, (0..60).collect()];
        assert!(chains.iter().any(|c| c.chain == want_a));
        let c2 = find(&["(1 2)(3 4)"]);
        let v4 = find(&["(1 2)(3 4)", "(1 4)(2 3)"]);
        let a4ish = find(&["(1 2 3)", "(1 2)(3 4)"]);
        let want_b: Vec<Vec<usize>> = vec![vec![0], c2, v4, a4ish, (0..60).collect()];
        assert!(chains.iter().any(|c| c.chain == want_b));
    }

    #[test]
    fn c6_chains_all_length_two() {
        let c6 = FiniteGroup::named("C6").unwrap();
        let (_, lengths) = maximal_subgroup_chains(&c6);
        assert_eq!(lengths.into_iter().collect::<Vec<_>>(), vec![2]);
        let c2 = FiniteGroup::named("C2").unwrap();
        let (chains, lengths) = maximal_subgroup_chains(&c2);
        assert_eq!(chains.len(), 1);
        assert_eq!(lengths.into_iter().collect::<Vec<_>>(), vec![1]);
    }

    #[test]
    fn canonical_id_separates_fixture_groups() {
        let names = ["C2", "C4", "V4", "C6", "S3", "D8", "A4", "S4"];
        let groups: Vec<FiniteGroup> = names.iter().map(|n| FiniteGroup::named(n).unwrap()).collect();
        for (i, gi) in groups.iter().enumerate() {
            for (j, gj) in groups.iter().enumerate() {
                let same_id = gi.canonical_id() == gj.canonical_id();
                let iso = group_isomorphic(gi, gj).unwrap();
                assert_eq!(same_id, iso, "{} vs {}", names[i], names[j]);
            }
        }
    }

    #[test]
    fn v4_is_characteristically_simple() {
        let v4 = FiniteGroup::named("V4").unwrap();
        assert!(is_characteristically_simple(&v4).unwrap());
        let c6 = FiniteGroup::named("C6").unwrap();
        assert!(!is_characteristically_simple(&c6).unwrap());
        let a5 = FiniteGroup::named("A5").unwrap();
        assert!(is_characteristically_simple(&a5).unwrap());
    }
}
