//! The map from form classes to cube roots of unity, its kernel, and
//! empirical per-class classification.
//!
//! For a valid element u, each class gets the value of [`class_symbol`] at
//! a witness form whose leading coefficient is coprime to 3*N(u)*D. The
//! map is a group homomorphism; on the index-2 subgroup of classes
//! representing primes p = 1 (mod 3) its kernel is exactly the set of
//! classes representing primes modulo which u is a cubic residue, of index
//! 6 in the full group. Those structural facts are asserted hard here —
//! any violation aborts as a contradiction, never degrades silently.
//!
//! [`class_symbol`]: crate::residuacity::class_symbol

use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Serialize};
use std::collections::HashSet;

use crate::eisenstein::CubicSymbol;
use crate::error::{Error, Result};
use crate::intutil;
use crate::qform::{self, ClassGroup, QuadForm};
use crate::quadint::QuadInt;
use crate::residuacity;

/// Knobs for [`classify`].
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ClassifyConfig {
    pub prime_limit: u64,
    pub samples_per_class: usize,
    pub search_bound: u32,
}

impl Default for ClassifyConfig {
    fn default() -> Self {
        Self {
            prime_limit: 100_000,
            samples_per_class: 5,
            search_bound: 50,
        }
    }
}

/// The symbol value and witness form per class, indexed like the group.
#[derive(Debug, Clone)]
pub struct ClassSymbolMap {
    pub values: Vec<CubicSymbol>,
    pub witnesses: Vec<QuadForm>,
}

/// Evaluate the class symbol on every class of the group, through witness
/// forms with leading coefficient coprime to 3*N(u)*D found by a
/// deterministic bounded search. A zero value would contradict the
/// coprimality of the witness and aborts.
pub fn class_symbol_map(u: &QuadInt, group: &ClassGroup, search_bound: u32) -> Result<ClassSymbolMap> {
    if group.d() != u.disc() {
        return Err(Error::DiscriminantMismatch);
    }
    let m = BigInt::from(3) * u.norm() * u.radicand();
    let mut values = Vec::with_capacity(group.len());
    let mut witnesses = Vec::with_capacity(group.len());
    for class in group.classes() {
        let witness = qform::find_coprime_rep(class.rep(), &m, search_bound)
            .map_err(|_| Error::WitnessSearchExhausted(class.to_string()))?;
        let value = residuacity::class_symbol(u, &witness)?;
        if value == CubicSymbol::Zero {
            return Err(Error::Contradiction(format!(
                "class symbol vanished at witness {witness} of {class}"
            )));
        }
        values.push(value);
        witnesses.push(witness);
    }
    Ok(ClassSymbolMap { values, witnesses })
}

/// Check multiplicativity over every pair of classes; returns the number
/// of pairs checked. Aborts with the offending pair otherwise.
pub fn verify_homomorphism(map: &ClassSymbolMap, group: &ClassGroup) -> Result<u64> {
    let n = group.len();
    let table = group.table()?;
    let mut pairs = 0u64;
    for i in 0..n {
        for j in 0..n {
            let k = table[i * n + j];
            if map.values[k] != map.values[i] * map.values[j] {
                return Err(Error::Contradiction(format!(
                    "not multiplicative at ({}, {})",
                    group.classes()[i],
                    group.classes()[j]
                )));
            }
            pairs += 1;
        }
    }
    Ok(pairs)
}

/// Indices of the classes representing primes p = 1 (mod 3). Verified to
/// contain the identity, be closed under composition, and have index
/// exactly 2; anything else aborts.
pub fn subgroup_h2(group: &ClassGroup) -> Result<Vec<usize>> {
    let h2: Vec<usize> = group
        .classes()
        .iter()
        .enumerate()
        .filter_map(|(i, c)| match qform::h2_marker(c.rep()) {
            Ok(1) => Some(Ok(i)),
            Ok(_) => None,
            Err(e) => Some(Err(e)),
        })
        .collect::<Result<_>>()?;
    if 2 * h2.len() != group.len() {
        return Err(Error::Contradiction(format!(
            "marker-1 classes have index {} != 2",
            group.len() as f64 / h2.len().max(1) as f64
        )));
    }
    let set: HashSet<usize> = h2.iter().copied().collect();
    if !set.contains(&group.identity_index()) {
        return Err(Error::Contradiction("identity class not marked 1".into()));
    }
    let table = group.table()?;
    let n = group.len();
    for &i in &h2 {
        for &j in &h2 {
            if !set.contains(&table[i * n + j]) {
                return Err(Error::Contradiction(format!(
                    "marker-1 classes not closed at ({}, {})",
                    group.classes()[i],
                    group.classes()[j]
                )));
            }
        }
    }
    Ok(h2)
}

/// Kernel of the class-symbol map on the index-2 subgroup: the classes
/// whose primes make u a cubic residue. Index 6 in the full group and 3 in
/// the subgroup are asserted hard.
pub fn kernel(group: &ClassGroup, map: &ClassSymbolMap) -> Result<Vec<usize>> {
    let h2 = subgroup_h2(group)?;
    let g: Vec<usize> = h2
        .iter()
        .copied()
        .filter(|&i| map.values[i] == CubicSymbol::One)
        .collect();
    if g.is_empty() || group.len() != 6 * g.len() || h2.len() != 3 * g.len() {
        return Err(Error::Contradiction(format!(
            "kernel size {} does not have index 6 in {} classes",
            g.len(),
            group.len()
        )));
    }
    let gset: HashSet<usize> = g.iter().copied().collect();
    if !gset.contains(&group.identity_index()) {
        return Err(Error::Contradiction("kernel misses the identity".into()));
    }
    for &i in &g {
        if !gset.contains(&group.inverse_index(i)?) {
            return Err(Error::Contradiction(format!(
                "kernel not closed under inverse at {}",
                group.classes()[i]
            )));
        }
    }
    Ok(g)
}

/// One oracle run at a sampled prime.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimeSample {
    pub p: u64,
    pub cubic: bool,
}

/// Per-class line of a [`ClassReport`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassRow {
    pub form: QuadForm,
    pub in_h2: bool,
    #[serde(rename = "J")]
    pub j: CubicSymbol,
    pub witness: QuadForm,
    pub samples: Vec<PrimeSample>,
}

/// Full classification of the group attached to u, with empirical oracle
/// verdicts cross-checked against the class-symbol map.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassReport {
    pub u: QuadInt,
    #[serde(with = "crate::bigser")]
    pub d: BigInt,
    pub class_count: usize,
    pub h2_count: usize,
    pub kernel: Vec<QuadForm>,
    pub table: Vec<ClassRow>,
    pub empirical_fraction: Option<f64>,
    pub warnings: Vec<String>,
}

/// Build the group, evaluate the map, verify the kernel indices, then
/// sample primes per marker-1 class (ascending, assigned through square
/// roots of d mod p) and run the oracle on each, demanding exact agreement
/// with the map. Classes left short of samples produce warnings, not
/// failures.
pub fn classify(u: &QuadInt, config: &ClassifyConfig) -> Result<ClassReport> {
    let group = qform::enumerate(u.disc())?;
    let map = class_symbol_map(u, &group, config.search_bound)?;
    let h2 = subgroup_h2(&group)?;
    let h2set: HashSet<usize> = h2.iter().copied().collect();
    let g = kernel(&group, &map)?;

    let want = config.samples_per_class;
    let mut samples: Vec<Vec<PrimeSample>> = vec![Vec::new(); group.len()];
    let m = BigInt::from(3) * u.norm() * u.radicand();
    if want > 0 {
        let mut open = h2.len();
        'primes: for p in intutil::primes_up_to(config.prime_limit) {
            if p % 3 != 1 {
                continue;
            }
            if open == 0 {
                break;
            }
            let bp = BigInt::from(p);
            if !intutil::gcd(&bp, &m).is_one() {
                continue;
            }
            let s = match intutil::sqrt_mod(u.disc(), &bp) {
                Ok(Some(s)) => s,
                Ok(None) => continue,
                Err(e) => return Err(e),
            };
            let c0 = (&s * &s - u.disc()) / &bp;
            let f0 = QuadForm::new(bp.clone(), s, c0);
            let idx = group
                .index_of(&qform::reduce(&f0)?.0)
                .ok_or_else(|| Error::Contradiction("class missing from enumeration".into()))?;
            let mut targets = vec![idx];
            let inv = group.inverse_index(idx)?;
            if inv != idx {
                targets.push(inv);
            }
            for idx in targets {
                if !h2set.contains(&idx) {
                    return Err(Error::Contradiction(format!(
                        "prime {p} = 1 mod 3 represented by a class outside the marker-1 set"
                    )));
                }
                if samples[idx].len() >= want {
                    continue;
                }
                let verdict =
                    match residuacity::criterion_check(u, group.classes()[idx].rep(), &bp, config.search_bound) {
                        Ok(v) => v,
                        Err(Error::NoAdmissibleRepresentation(_)) => continue,
                        Err(e) => return Err(e),
                    };
                if !verdict.consistent {
                    return Err(Error::Contradiction(format!(
                        "inconsistent verdict at p = {p}: {}",
                        serde_json::to_string(&verdict).unwrap_or_default()
                    )));
                }
                if verdict.r != map.values[idx] {
                    return Err(Error::Contradiction(format!(
                        "class symbol changed between witnesses at {}",
                        group.classes()[idx]
                    )));
                }
                if verdict.oracle_cubic != (map.values[idx] == CubicSymbol::One) {
                    return Err(Error::Contradiction(format!(
                        "oracle disagrees with the class map at p = {p}"
                    )));
                }
                samples[idx].push(PrimeSample {
                    p,
                    cubic: verdict.oracle_cubic,
                });
                if samples[idx].len() == want {
                    open -= 1;
                    if open == 0 {
                        break 'primes;
                    }
                }
            }
        }
    }

    let mut warnings = Vec::new();
    for &i in &h2 {
        if samples[i].len() < want {
            warnings.push(format!(
                "class {} sampled only {} of {} primes below {}",
                group.classes()[i],
                samples[i].len(),
                want,
                config.prime_limit
            ));
        }
    }
    let total: usize = samples.iter().map(Vec::len).sum();
    let cubic: usize = samples
        .iter()
        .flat_map(|v| v.iter())
        .filter(|s| s.cubic)
        .count();
    let empirical_fraction = if total > 0 {
        Some(cubic as f64 / total as f64)
    } else {
        None
    };

    let table: Vec<ClassRow> = group
        .classes()
        .iter()
        .enumerate()
        .map(|(i, c)| ClassRow {
            form: c.rep().clone(),
            in_h2: h2set.contains(&i),
            j: map.values[i],
            witness: map.witnesses[i].clone(),
            samples: samples[i].clone(),
        })
        .collect();
    Ok(ClassReport {
        u: u.clone(),
        d: u.disc().clone(),
        class_count: group.len(),
        h2_count: h2.len(),
        kernel: g.iter().map(|&i| group.classes()[i].rep().clone()).collect(),
        table,
        empirical_fraction,
        warnings,
    })
}

/// Outcome of the statistical density scan.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct DensityReport {
    pub prime_limit: u64,
    pub admissible: u64,
    pub cubic: u64,
}

impl DensityReport {
    pub fn fraction(&self) -> f64 {
        if self.admissible == 0 {
            return f64::NAN;
        }
        self.cubic as f64 / self.admissible as f64
    }
}

/// Over all primes p = 1 (mod 3) up to the limit that are represented by a
/// class and admit a representation satisfying the coprimality condition,
/// count how often u is a cubic residue. The fraction tends to 1/3; this
/// is a sanity monitor with a loose tolerance, not an exact reproduction.
pub fn density_monitor(u: &QuadInt, prime_limit: u64, search_bound: u32) -> Result<DensityReport> {
    let sweep = residuacity::criterion_sweep(u, prime_limit, search_bound)?;
    density_from_sweep(sweep)
}

/// Single-threaded variant of [`density_monitor`].
pub fn density_monitor_sequential(
    u: &QuadInt,
    prime_limit: u64,
    search_bound: u32,
) -> Result<DensityReport> {
    let sweep = residuacity::criterion_sweep_sequential(u, prime_limit, search_bound)?;
    density_from_sweep(sweep)
}

fn density_from_sweep(sweep: residuacity::CriterionSweep) -> Result<DensityReport> {
    if !sweep.failures.is_empty() {
        return Err(Error::Contradiction(format!(
            "{} inconsistent verdicts during density scan",
            sweep.failures.len()
        )));
    }
    Ok(DensityReport {
        prime_limit: sweep.prime_limit,
        admissible: sweep.checked,
        cubic: sweep.cubic_count,
    })
}
