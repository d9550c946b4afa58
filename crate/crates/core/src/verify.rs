//! The randomized invariant suite behind `torheight check`.

use num_traits::Zero;

use crate::concave::{legendre_dual, AffineForm, ConcavePA};
use crate::error::Result;
use crate::exact::{factorial, fmt_q, Q};
use crate::heights::{global_height, CircleOptions, RoofInstance};
use crate::monge::{check_a21, ma_measure};
use crate::polyhedra::{volume, VolumeMode};
use crate::random::InstanceGen;
use crate::toric::{support_function_of_polytope, toric_local_height, SupportFunctionData};

#[derive(Clone, Debug, PartialEq)]
pub struct PropertyOutcome {
    pub name: &'static str,
    pub cases: usize,
    pub failures: usize,
    pub first_failure: Option<String>,
}

impl PropertyOutcome {
    pub fn new(name: &'static str) -> Self {
        PropertyOutcome { name, cases: 0, failures: 0, first_failure: None }
    }

    pub fn record(&mut self, outcome: Result<Option<String>>) {
        self.cases += 1;
        let failure = match outcome {
            Ok(None) => return,
            Ok(Some(msg)) => msg,
            Err(e) => format!("error: {e}"),
        };
        self.failures += 1;
        self.first_failure.get_or_insert(failure);
    }

    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

/// Instance counts per property and dimension.
#[derive(Clone, Copy, Debug)]
pub struct SuiteSize {
    pub concave: usize,
    pub a21: usize,
    pub toric: usize,
    pub heights: usize,
}

impl Default for SuiteSize {
    fn default() -> Self {
        SuiteSize { concave: 40, a21: 20, toric: 10, heights: 10 }
    }
}

/// `(f^∨)^∨ = f` in canonical form.
pub fn involution_case(f: &ConcavePA) -> Result<Option<String>> {
    let back = legendre_dual(f).dual();
    Ok((back != *f).then(|| format!("dual of dual differs for {f}")))
}

/// Total Monge–Ampère mass equals `vol(Δ_f)`.
pub fn mass_case(f: &ConcavePA) -> Result<Option<String>> {
    let mass = ma_measure(f).total_mass();
    let vol = volume(&f.stability_set(), VolumeMode::Ambient);
    Ok((mass != vol).then(|| format!("mass {} but volume {} for {f}", fmt_q(&mass), fmt_q(&vol))))
}

pub fn a21_case(f: &ConcavePA) -> Result<Option<String>> {
    let sides = check_a21(f)?;
    Ok((!sides.holds()).then(|| format!("lhs {} rhs {} for {f}", fmt_q(&sides.lhs), fmt_q(&sides.rhs))))
}

/// A random metric for `support`: one vertex piece per vertex of `Δ_Ψ`
/// with a random constant.
pub fn random_metric(gen: &mut InstanceGen, support: &SupportFunctionData) -> Result<ConcavePA> {
    let pieces: Vec<AffineForm> = support
        .polytope()
        .vertices()
        .iter()
        .map(|m| AffineForm::new(m.clone(), gen.rational(5, 3)))
        .collect();
    ConcavePA::new(&pieces)
}

/// Canonical nullity plus `h(Ψ, ψ + c) - h(Ψ, ψ) = -(n+1)! c vol(Δ_Ψ)`.
pub fn scaling_on(support: &SupportFunctionData, metric: &ConcavePA, c: &Q) -> Result<Option<String>> {
    let canonical = toric_local_height(support, &support.min_form())?;
    if !canonical.value.is_zero() {
        return Ok(Some(format!("canonical height {} is not zero", fmt_q(&canonical.value))));
    }
    let n = support.ambient_dim();
    let base = toric_local_height(support, metric)?.value;
    let shifted = toric_local_height(support, &metric.add_affine(&vec![Q::zero(); n], c))?.value;
    let expected = -Q::from_integer(factorial(n + 1)) * c * volume(&support.polytope(), VolumeMode::Ambient);
    let diff = shifted - base;
    Ok((diff != expected).then(|| format!("difference {} expected {}", fmt_q(&diff), fmt_q(&expected))))
}

pub fn scaling_case(gen: &mut InstanceGen, n: usize) -> Result<Option<String>> {
    let support = support_function_of_polytope(&gen.lattice_polytope(n, 6))?;
    let metric = random_metric(gen, &support)?;
    let c = gen.rational(5, 4);
    scaling_on(&support, &metric, &c)
}

/// Per-place shifts whose weighted sum vanishes.
pub fn balanced_shifts(gen: &mut InstanceGen, instance: &RoofInstance) -> Vec<Q> {
    let places = instance.places();
    let mut shifts: Vec<Q> = (0..places.len()).map(|_| gen.rational(3, 4)).collect();
    let last = places.len() - 1;
    let partial: Q = places[..last].iter().zip(&shifts).map(|(p, c)| &p.weight * c).sum();
    shifts[last] = -partial / &places[last].weight;
    shifts
}

/// Shifting by balanced constants leaves the global height unchanged:
/// exactly for rational instances, within `1e-9` otherwise.
pub fn product_formula_on(instance: &RoofInstance, shifts: &[Q]) -> Result<Option<String>> {
    let opts = CircleOptions::default();
    let before = global_height(instance, &opts)?;
    let after = global_height(&instance.shifted(shifts)?, &opts)?;
    Ok(match (&before.exact_total, &after.exact_total) {
        (Some(a), Some(b)) => (a != b).then(|| format!("height moved from {} to {}", fmt_q(a), fmt_q(b))),
        _ => {
            let d = (before.total - after.total).abs();
            (d >= 1e-9).then(|| format!("height moved by {d:e}"))
        }
    })
}

pub fn product_formula_case(gen: &mut InstanceGen, n: usize, with_sampled: bool) -> Result<Option<String>> {
    let instance = gen.roof_instance(n, with_sampled);
    let shifts = balanced_shifts(gen, &instance);
    product_formula_on(&instance, &shifts)
}

/// Runs the whole suite for dimensions 1 to 3 (1 to 2 for heights).
pub fn run_suite(seed: u64, size: SuiteSize) -> Vec<PropertyOutcome> {
    let mut gen = InstanceGen::new(seed);
    let mut involution = PropertyOutcome::new("involution");
    let mut mass = PropertyOutcome::new("mass");
    let mut a21 = PropertyOutcome::new("a21");
    let mut scaling = PropertyOutcome::new("scaling-law");
    let mut product = PropertyOutcome::new("product-formula-invariance");
    for n in 1..=3 {
        for _ in 0..size.concave {
            let f = gen.concave_pa(n, 12);
            involution.record(involution_case(&f));
            mass.record(mass_case(&f));
        }
        for _ in 0..size.a21 {
            let f = gen.full_dim_concave_pa(n, 12);
            a21.record(a21_case(&f));
        }
        for _ in 0..size.toric {
            scaling.record(scaling_case(&mut gen, n));
        }
    }
    for n in 1..=2 {
        for i in 0..size.heights {
            product.record(product_formula_case(&mut gen, n, i % 2 == 1));
        }
    }
    vec![involution, mass, a21, scaling, product]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_suite_passes() {
        let size = SuiteSize { concave: 5, a21: 3, toric: 2, heights: 2 };
        for outcome in run_suite(7, size) {
            assert!(outcome.passed(), "{outcome:?}");
            assert!(outcome.cases > 0);
        }
    }

    #[test]
    fn failures_are_recorded() {
        let mut o = PropertyOutcome::new("x");
        o.record(Ok(Some("first".into())));
        o.record(Ok(Some("second".into())));
        o.record(Ok(None));
        assert_eq!((o.cases, o.failures, o.first_failure.as_deref()), (3, 2, Some("first")));
    }
}
