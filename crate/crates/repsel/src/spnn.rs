//! From continuous support points to a concrete validation subset:
//! proportional per-class allocation, nearest-row snapping, and the
//! end-to-end selection drivers (optimized and random baseline).

use std::collections::BTreeMap;

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::dataset::{Dataset, Standardizer};
use crate::energy::{energy_distance_full, euclidean, EnergyValue, PointSet};
use crate::error::{Error, Result};
use crate::sp_optimizer::{optimize, OptimizerConfig};

/// How the caller states the validation-subset size.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SelectionSize {
    /// Fraction of the dataset; resolves to `round(ratio * N)`.
    Ratio(f64),
    /// Absolute number of rows.
    Count(usize),
}

impl SelectionSize {
    pub fn resolve(&self, n_rows: usize) -> Result<usize> {
        let nv = match *self {
            SelectionSize::Ratio(r) => {
                if !(r > 0.0 && r <= 1.0) {
                    return Err(Error::invalid_argument(format!(
                        "ratio must be in (0, 1], got {r}"
                    )));
                }
                (r * n_rows as f64).round() as usize
            }
            SelectionSize::Count(k) => k,
        };
        if nv == 0 {
            return Err(Error::invalid_data(
                "resolved validation size is 0; increase the ratio or count",
            ));
        }
        Ok(nv)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub enum SelectionMethod {
    #[serde(rename = "spnn")]
    Spnn,
    #[serde(rename = "random")]
    Random,
}

impl std::fmt::Display for SelectionMethod {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            SelectionMethod::Spnn => write!(f, "spnn"),
            SelectionMethod::Random => write!(f, "random"),
        }
    }
}

/// A chosen validation subset with its per-class bookkeeping.
///
/// `validation_ids` are original row ids, grouped per class in label order,
/// within a class in selection order. `per_class_energy` holds the full
/// energy distance between the selected rows and their class sub-dataset,
/// both in standardized space.
#[derive(Debug, Clone)]
pub struct SelectionResult {
    pub validation_ids: Vec<usize>,
    pub per_class_allocation: BTreeMap<String, usize>,
    pub per_class_energy: BTreeMap<String, EnergyValue>,
    pub method: SelectionMethod,
    pub seed: u64,
    pub iterations: usize,
    pub converged: bool,
}

impl SelectionResult {
    /// One id per line under a `row_id` header, LF endings.
    pub fn ids_csv(&self) -> String {
        let mut out = String::from("row_id\n");
        for id in &self.validation_ids {
            out.push_str(&id.to_string());
            out.push('\n');
        }
        out
    }

    /// JSON report with per-class counts and energy diagnostics.
    pub fn report_json(&self) -> serde_json::Value {
        let per_class: serde_json::Map<String, serde_json::Value> = self
            .per_class_allocation
            .iter()
            .map(|(class, &count)| {
                let energy = self.per_class_energy.get(class);
                (
                    class.clone(),
                    serde_json::json!({
                        "count": count,
                        "energy": energy.map(|e| serde_json::json!({
                            "value": e.value,
                            "attraction": e.attraction,
                            "repulsion": e.repulsion,
                            "constant": e.constant,
                        })),
                    }),
                )
            })
            .collect();
        serde_json::json!({
            "method": self.method.to_string(),
            "seed": self.seed,
            "nv": self.validation_ids.len(),
            "per_class": per_class,
            "iterations": self.iterations,
            "converged": self.converged,
        })
    }
}

/// Largest-remainder apportionment of `total_nv` across classes,
/// proportional to class counts.
///
/// Every class receives at least one slot (valid because `total_nv` must be
/// at least the number of classes). Remainder slots go to the largest
/// fractional parts; ties break by descending class count, then label
/// order. Fractional parts compare exactly via integer remainders.
pub fn allocate_stratified(
    total_nv: usize,
    class_counts: &BTreeMap<String, usize>,
) -> Result<BTreeMap<String, usize>> {
    if class_counts.is_empty() {
        return Err(Error::invalid_data("no classes to allocate across"));
    }
    if let Some((label, _)) = class_counts.iter().find(|(_, &c)| c == 0) {
        return Err(Error::invalid_data(format!("class `{label}` has 0 rows")));
    }
    let total: usize = class_counts.values().sum();
    if total_nv > total {
        return Err(Error::invalid_data(format!(
            "requested {total_nv} validation rows but the dataset has {total}"
        )));
    }
    if total_nv < class_counts.len() {
        return Err(Error::invalid_data(format!(
            "requested {total_nv} validation rows for {} classes; each class needs one",
            class_counts.len()
        )));
    }

    let mut alloc: BTreeMap<String, usize> = BTreeMap::new();
    // (remainder, count, label) per class; quotas = total_nv*count/total
    let mut remainders: Vec<(usize, usize, &String)> = Vec::with_capacity(class_counts.len());
    let mut assigned = 0usize;
    for (label, &count) in class_counts {
        let scaled = total_nv * count;
        let floor = scaled / total;
        let rem = scaled % total;
        alloc.insert(label.clone(), floor);
        assigned += floor;
        remainders.push((rem, count, label));
    }
    remainders.sort_by(|a, b| {
        b.0.cmp(&a.0) // larger remainder first
            .then(b.1.cmp(&a.1)) // then larger class
            .then(a.2.cmp(b.2)) // then label order
    });
    for &(_, _, label) in remainders.iter().take(total_nv - assigned) {
        *alloc.get_mut(label).expect("label present") += 1;
    }

    // minimum-one rule: lift empty classes, taking from the largest
    // allocation (ties by larger class, then label order)
    while let Some(poorest) = remainders
        .iter()
        .map(|&(_, count, label)| (count, label.clone()))
        .filter(|(_, label)| alloc[label] == 0)
        .max_by(|a, b| a.0.cmp(&b.0).then(b.1.cmp(&a.1)))
    {
        let donor = alloc
            .iter()
            .max_by(|a, b| {
                a.1.cmp(b.1)
                    .then(class_counts[a.0].cmp(&class_counts[b.0]))
                    .then(b.0.cmp(a.0))
            })
            .map(|(label, _)| label.clone())
            .expect("nonempty allocation");
        *alloc.get_mut(&donor).expect("donor present") -= 1;
        *alloc.get_mut(&poorest.1).expect("label present") += 1;
    }
    Ok(alloc)
}

/// Snap each support point to its nearest not-yet-claimed dataset row.
///
/// Greedy in support-point index order; distances are Euclidean in
/// standardized space; ties break toward the lowest row id. Returns
/// original row ids, one per support point, all distinct.
pub fn snap_to_dataset(
    support: &PointSet,
    data: &Dataset,
    standardizer: &Standardizer,
) -> Result<Vec<usize>> {
    if support.len() > data.n_rows() {
        return Err(Error::invalid_data(format!(
            "{} support points cannot claim distinct rows among {}",
            support.len(),
            data.n_rows()
        )));
    }
    let standardized = standardizer.transform(data.features())?;
    if support.dim() != standardized.ncols() {
        return Err(Error::DimensionMismatch {
            left: support.dim(),
            right: standardized.ncols(),
        });
    }
    let ids = data.row_ids();
    let mut claimed = vec![false; data.n_rows()];
    let mut out = Vec::with_capacity(support.len());
    for s in 0..support.len() {
        let sp = support.point(s);
        let mut best: Option<(f64, usize, usize)> = None; // (dist, row_id, pos)
        for pos in 0..data.n_rows() {
            if claimed[pos] {
                continue;
            }
            let dist = euclidean(sp, standardized.row(pos));
            if best.is_none_or(|(bd, bid, _)| (dist, ids[pos]) < (bd, bid)) {
                best = Some((dist, ids[pos], pos));
            }
        }
        let (_, id, pos) = best.expect("support fits in data");
        claimed[pos] = true;
        out.push(id);
    }
    Ok(out)
}

fn class_sub_seeds(seed: u64, classes: &BTreeMap<String, usize>) -> BTreeMap<String, u64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    classes
        .keys()
        .map(|label| (label.clone(), rng.next_u64()))
        .collect()
}

fn check_class_count(counts: &BTreeMap<String, usize>) -> Result<()> {
    if counts.is_empty() {
        return Err(Error::invalid_data("dataset has no rows"));
    }
    if counts.len() > 2 {
        return Err(Error::invalid_data(format!(
            "selection supports at most 2 classes, found {}",
            counts.len()
        )));
    }
    Ok(())
}

/// Select a validation subset by optimizing support points within each
/// class and snapping them to distinct rows.
///
/// The standardizer is fitted on the full dataset and shared by both
/// classes; optimization, snapping, and the reported energy diagnostics
/// all live in that one standardized space. `config.n_points` is ignored:
/// each class optimizes its allocated share. Per-class runs draw their
/// seeds from `config.seed`, so a full run is reproducible bit for bit.
pub fn select_spnn(
    data: &Dataset,
    size: SelectionSize,
    config: &OptimizerConfig,
) -> Result<SelectionResult> {
    let counts = data.class_counts();
    check_class_count(&counts)?;
    let nv = size.resolve(data.n_rows())?;
    let allocation = allocate_stratified(nv, &counts)?;
    let standardizer = Standardizer::fit(data)?;
    let sub_seeds = class_sub_seeds(config.seed, &counts);

    let mut validation_ids = Vec::with_capacity(nv);
    let mut per_class_energy = BTreeMap::new();
    let mut iterations = 0usize;
    let mut converged = true;
    for (label, sub) in data.split_by_class() {
        let n_points = allocation[&label];
        let class_points = PointSet::new(standardizer.transform(sub.features())?)?;
        let class_config = OptimizerConfig {
            n_points,
            seed: sub_seeds[&label],
            ..config.clone()
        };
        let (support, trace) = optimize(&class_points, &class_config)?;
        let ids = snap_to_dataset(&support, &sub, &standardizer)?;

        let positions: Vec<usize> = ids
            .iter()
            .map(|id| {
                sub.row_ids()
                    .iter()
                    .position(|r| r == id)
                    .expect("snapped id belongs to its class")
            })
            .collect();
        let selected =
            PointSet::new(standardizer.transform(sub.subset(&positions).features())?)?;
        per_class_energy.insert(label.clone(), energy_distance_full(&selected, &class_points)?);

        validation_ids.extend(ids);
        iterations += trace.iterations;
        converged &= trace.converged;
    }

    Ok(SelectionResult {
        validation_ids,
        per_class_allocation: allocation,
        per_class_energy,
        method: SelectionMethod::Spnn,
        seed: config.seed,
        iterations,
        converged,
    })
}

/// Baseline: the same stratified allocation filled by uniform draws
/// without replacement, deterministic under `seed`.
pub fn select_random(data: &Dataset, size: SelectionSize, seed: u64) -> Result<SelectionResult> {
    let counts = data.class_counts();
    check_class_count(&counts)?;
    let nv = size.resolve(data.n_rows())?;
    let allocation = allocate_stratified(nv, &counts)?;
    let standardizer = Standardizer::fit(data)?;
    let sub_seeds = class_sub_seeds(seed, &counts);

    let mut validation_ids = Vec::with_capacity(nv);
    let mut per_class_energy = BTreeMap::new();
    for (label, sub) in data.split_by_class() {
        let take = allocation[&label];
        let mut rng = ChaCha8Rng::seed_from_u64(sub_seeds[&label]);
        let positions: Vec<usize> =
            rand::seq::index::sample(&mut rng, sub.n_rows(), take).into_vec();
        let class_points = PointSet::new(standardizer.transform(sub.features())?)?;
        let selected =
            PointSet::new(standardizer.transform(sub.subset(&positions).features())?)?;
        per_class_energy.insert(label.clone(), energy_distance_full(&selected, &class_points)?);
        validation_ids.extend(positions.iter().map(|&p| sub.row_ids()[p]));
    }

    Ok(SelectionResult {
        validation_ids,
        per_class_allocation: allocation,
        per_class_energy,
        method: SelectionMethod::Random,
        seed,
        iterations: 0,
        converged: true,
    })
}
