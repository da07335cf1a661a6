use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::points::PointSet;

use super::{covering_number, gen_ksubsets, is_maximal_intersecting, KSet, Params, SetFamily};

/// `binomial(n, r)`, or `None` on `u128` overflow. Zero when `r > n`.
pub fn binomial(n: u64, r: u64) -> Option<u128> {
    if r > n {
        return Some(0);
    }
    let r = r.min(n - r);
    let mut acc: u128 = 1;
    for i in 0..r {
        // acc * (n - i) / (i + 1) stays integral at every step
        acc = acc.checked_mul((n - i) as u128)? / (i as u128 + 1);
    }
    Some(acc)
}

/// `d_j`: the largest number of members sharing a common j-subset.
pub fn degree_j(fam: &SetFamily, j: u32) -> Result<u64> {
    let k = fam.params().k();
    if j == 0 || j > k {
        return Err(Error::param(format!(
            "degree order j = {j} outside 1..={k}"
        )));
    }
    if j == 1 {
        let mut counts: HashMap<u32, u64> = HashMap::new();
        for m in fam.iter() {
            for p in m.points().iter() {
                *counts.entry(p).or_default() += 1;
            }
        }
        return Ok(counts.values().copied().max().unwrap_or(0));
    }
    let mut counts: HashMap<PointSet, u64> = HashMap::new();
    for m in fam.iter() {
        let elems = m.elements();
        for idx in gen_ksubsets(Params::new(k, j)?)? {
            let sub: PointSet = idx.points().iter().map(|i| elems[i as usize - 1]).collect();
            *counts.entry(sub).or_default() += 1;
        }
    }
    Ok(counts.values().copied().max().unwrap_or(0))
}

/// Size bounds for a maximal intersecting family in terms of its covering number.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SizeBoundReport {
    pub size: u64,
    pub tau: u32,
    /// `binomial(n - tau, k - tau)`
    pub lower: u128,
    /// `k^tau * binomial(n - tau, k - tau)`
    pub upper: u128,
    pub pass: bool,
}

pub fn check_size_bounds(fam: &SetFamily) -> Result<SizeBoundReport> {
    fam.require_intersecting()?;
    if !is_maximal_intersecting(fam)? {
        return Err(Error::state(
            "size bounds need a maximal intersecting family",
        ));
    }
    let (tau, _) = covering_number(fam)?;
    let p = fam.params();
    let overflow = || Error::Resource("size bound overflows u128".into());
    let lower = binomial((p.n() - tau) as u64, (p.k() - tau) as u64).ok_or_else(overflow)?;
    let upper = (p.k() as u128)
        .checked_pow(tau)
        .and_then(|f| f.checked_mul(lower))
        .ok_or_else(overflow)?;
    let size = fam.len() as u64;
    Ok(SizeBoundReport {
        size,
        tau,
        lower,
        upper,
        pass: lower <= size as u128 && size as u128 <= upper,
    })
}

/// A cover `C` together with `k + 1` claimed sets whose residues outside
/// `C` are non-empty and pairwise disjoint. Any intersecting k-uniform
/// family containing the witnesses then has covering number at most `|C|`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverCertificate {
    pub cover: PointSet,
    pub witnesses: Vec<KSet>,
}

pub fn check_disjointness_certificate(cert: &CoverCertificate, p: Params) -> Result<bool> {
    let want = p.k() as usize + 1;
    if cert.witnesses.len() != want {
        return Err(Error::param(format!(
            "certificate has {} witnesses, expected k + 1 = {want}",
            cert.witnesses.len()
        )));
    }
    for w in &cert.witnesses {
        if w.universe_size() != p.n() || w.len() != p.k() as usize {
            return Err(Error::param(format!(
                "witness {w} is not a {}-subset of [{}]",
                p.k(),
                p.n()
            )));
        }
    }
    for (i, a) in cert.witnesses.iter().enumerate() {
        for b in &cert.witnesses[i + 1..] {
            if !a.meets(b) {
                return Err(Error::state(format!("witnesses {a} and {b} are disjoint")));
            }
        }
    }
    let mut seen = PointSet::new();
    for w in &cert.witnesses {
        let residue = w.points() - &cert.cover;
        if residue.is_empty() || residue.meets(&seen) {
            return Ok(false);
        }
        seen = &seen | &residue;
    }
    Ok(true)
}
