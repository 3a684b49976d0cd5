//! Matched pairs of finite groups with normalized two-cocycles, the input
//! data for bicrossed product constructions.

use crate::error::{Error, Result};
use crate::groups::FiniteGroup;
use crate::scalar::{Field, Scalar};

/// Mutual actions between groups `F` and `Gamma` with optional cocycles.
///
/// `ract[g][x]` is the right action of `x in F` on `g in Gamma`; `lact[t][x]`
/// is the left action of `t in Gamma` on `x in F`. `sigma[x][y][g]` and
/// `tau[g][h][x]` are the cocycle values; `None` means trivial. Compatibility
/// of the whole datum is validated operationally: the bicrossed product built
/// from it must pass the full axiom check.
#[derive(Clone, PartialEq, Debug)]
pub struct MatchedPairData {
    pub f: FiniteGroup,
    pub gamma: FiniteGroup,
    pub lact: Vec<Vec<usize>>,
    pub ract: Vec<Vec<usize>>,
    pub sigma: Option<Vec<Vec<Vec<Scalar>>>>,
    pub tau: Option<Vec<Vec<Vec<Scalar>>>>,
}

impl MatchedPairData {
    /// Shape and normalization checks: actions are identity-preserving
    /// permutation actions, cocycles are nonzero and normalized.
    pub fn validate(&self, field: Field) -> Result<()> {
        let nf = self.f.order();
        let ng = self.gamma.order();
        if self.lact.len() != ng || self.lact.iter().any(|r| r.len() != nf) {
            return Err(Error::Input("left action table shape mismatch".into()));
        }
        if self.ract.len() != ng || self.ract.iter().any(|r| r.len() != nf) {
            return Err(Error::Input("right action table shape mismatch".into()));
        }
        if self.lact.iter().flatten().any(|&x| x >= nf) || self.ract.iter().flatten().any(|&g| g >= ng)
        {
            return Err(Error::Input("action table index out of range".into()));
        }
        // lact: left action of Gamma on F
        for x in 0..nf {
            if self.lact[0][x] != x {
                return Err(Error::Input("left action: identity must act trivially".into()));
            }
        }
        for s in 0..ng {
            if self.lact[s][0] != 0 {
                return Err(Error::Input("left action must fix the identity of F".into()));
            }
            for t in 0..ng {
                for x in 0..nf {
                    if self.lact[self.gamma.mul(s, t)][x] != self.lact[s][self.lact[t][x]] {
                        return Err(Error::Input("left action law fails".into()));
                    }
                }
            }
        }
        // ract: right action of F on Gamma
        for g in 0..ng {
            if self.ract[g][0] != g {
                return Err(Error::Input("right action: identity must act trivially".into()));
            }
        }
        for g in 0..ng {
            for x in 0..nf {
                for y in 0..nf {
                    if self.ract[g][self.f.mul(x, y)] != self.ract[self.ract[g][x]][y] {
                        return Err(Error::Input("right action law fails".into()));
                    }
                }
            }
        }
        // each x must act bijectively on Gamma, each t bijectively on F
        for x in 0..nf {
            let mut seen = vec![false; ng];
            for g in 0..ng {
                let h = self.ract[g][x];
                if seen[h] {
                    return Err(Error::Input("right action is not by permutations".into()));
                }
                seen[h] = true;
            }
        }
        for t in 0..ng {
            let mut seen = vec![false; nf];
            for x in 0..nf {
                let y = self.lact[t][x];
                if seen[y] {
                    return Err(Error::Input("left action is not by permutations".into()));
                }
                seen[y] = true;
            }
        }
        if let Some(sigma) = &self.sigma {
            if sigma.len() != nf
                || sigma.iter().any(|r| r.len() != nf)
                || sigma.iter().flatten().any(|v| v.len() != ng)
            {
                return Err(Error::Input("sigma table shape mismatch".into()));
            }
            for x in 0..nf {
                for y in 0..nf {
                    for g in 0..ng {
                        let v = &sigma[x][y][g];
                        if v.field() != field {
                            return Err(Error::Input("sigma scalar field mismatch".into()));
                        }
                        if v.is_zero() {
                            return Err(Error::Input("sigma must be invertible (nonzero)".into()));
                        }
                        if (x == 0 || y == 0) && !v.is_one() {
                            return Err(Error::Input("sigma is not normalized".into()));
                        }
                    }
                }
            }
        }
        if let Some(tau) = &self.tau {
            if tau.len() != ng
                || tau.iter().any(|r| r.len() != ng)
                || tau.iter().flatten().any(|v| v.len() != nf)
            {
                return Err(Error::Input("tau table shape mismatch".into()));
            }
            for g in 0..ng {
                for h in 0..ng {
                    for x in 0..nf {
                        let v = &tau[g][h][x];
                        if v.field() != field {
                            return Err(Error::Input("tau scalar field mismatch".into()));
                        }
                        if v.is_zero() {
                            return Err(Error::Input("tau must be invertible (nonzero)".into()));
                        }
                        if (g == 0 || h == 0) && !v.is_one() {
                            return Err(Error::Input("tau is not normalized".into()));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    pub fn sigma_at(&self, field: Field, x: usize, y: usize, g: usize) -> Scalar {
        match &self.sigma {
            Some(s) => s[x][y][g].clone(),
            None => field.one(),
        }
    }

    pub fn tau_at(&self, field: Field, g: usize, h: usize, x: usize) -> Scalar {
        match &self.tau {
            Some(t) => t[g][h][x].clone(),
            None => field.one(),
        }
    }

    /// Restriction to a stable subgroup `sub` of `F` (given as sorted element
    /// indices). Requires `sub` to be stable under the left action.
    pub fn restrict_f(&self, sub: &[usize]) -> Result<MatchedPairData> {
        for t in 0..self.gamma.order() {
            for &x in sub {
                if sub.binary_search(&self.lact[t][x]).is_err() {
                    return Err(Error::Domain(
                        "subgroup of F is not stable under the Gamma action".into(),
                    ));
                }
            }
        }
        let f_sub = self.f.subgroup_group(sub)?;
        let pos = |x: usize| sub.binary_search(&x).expect("stable subgroup");
        let lact = (0..self.gamma.order())
            .map(|t| sub.iter().map(|&x| pos(self.lact[t][x])).collect())
            .collect();
        let ract = (0..self.gamma.order())
            .map(|g| sub.iter().map(|&x| self.ract[g][x]).collect())
            .collect();
        let sigma = self.sigma.as_ref().map(|s| {
            sub.iter()
                .map(|&x| sub.iter().map(|&y| s[x][y].clone()).collect())
                .collect()
        });
        let tau = self.tau.as_ref().map(|t| {
            t.iter()
                .map(|row| {
                    row.iter()
                        .map(|v| sub.iter().map(|&x| v[x].clone()).collect())
                        .collect()
                })
                .collect()
        });
        Ok(MatchedPairData {
            f: f_sub,
            gamma: self.gamma.clone(),
            lact,
            ract,
            sigma,
            tau,
        })
    }

    /// Restriction to a stable subgroup `sub` of `Gamma`. Requires stability
    /// under the right action of all of `F`.
    pub fn restrict_gamma(&self, sub: &[usize]) -> Result<MatchedPairData> {
        for &g in sub {
            for x in 0..self.f.order() {
                if sub.binary_search(&self.ract[g][x]).is_err() {
                    return Err(Error::Domain(
                        "subgroup of Gamma is not stable under the F action".into(),
                    ));
                }
            }
        }
        let gamma_sub = self.gamma.subgroup_group(sub)?;
        let lact = sub.iter().map(|&t| self.lact[t].clone()).collect();
        let ract = sub
            .iter()
            .map(|&g| {
                (0..self.f.order())
                    .map(|x| sub.binary_search(&self.ract[g][x]).expect("stable subgroup"))
                    .collect()
            })
            .collect();
        let sigma = self.sigma.as_ref().map(|s| {
            s.iter()
                .map(|row| {
                    row.iter()
                        .map(|v| sub.iter().map(|&g| v[g].clone()).collect())
                        .collect()
                })
                .collect()
        });
        let tau = self.tau.as_ref().map(|t| {
            sub.iter()
                .map(|&g| sub.iter().map(|&h| t[g][h].clone()).collect())
                .collect()
        });
        Ok(MatchedPairData {
            f: self.f.clone(),
            gamma: gamma_sub,
            lact,
            ract,
            sigma,
            tau,
        })
    }
}
