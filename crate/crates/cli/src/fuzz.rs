//! Randomised checking of the plane-graph property, the translate-in-homothet
//! subgraph relation, and the triangulation edge count.
//!
//! Every trial derives its own random stream from `(seed, trial)`, so results
//! do not depend on scheduling and a summary is reproducible byte for byte.

use std::fmt;

use homoplane_core::geometry::collinear_triple;
use homoplane_core::graph::witness_is_valid;
use homoplane_core::verify::boundary_quadruple;
use homoplane_core::{
    face_structure, is_subgraph, triangulation_check, try_build_graph, verify_plane, FaceStructure,
    GeometricGraph, Mode, Point2, PointSet, Scalar, TriangulationCheck,
};
use rand::Rng;
use rayon::prelude::*;

use crate::generate::{generate_instance, random_compact_shape, random_points, rng_for_stream};
use crate::instance::{emit_instance, Instance};
use crate::oracle::sample_edges;

/// Open fractions cycled through when none is fixed.
pub fn default_open_fractions() -> [Scalar; 3] {
    [
        Scalar::from_integer(0.into()),
        Scalar::new(1.into(), 4.into()),
        Scalar::from_integer(1.into()),
    ]
}

#[derive(Clone, Debug)]
pub struct FuzzConfig {
    pub trials: usize,
    pub seed: u64,
    pub max_points: usize,
    pub max_halfplanes: usize,
    pub open_fraction: Option<Scalar>,
    /// Run the sampling cross-check on every `sample_every`-th trial (0 disables it).
    pub sample_every: usize,
    pub sample_trials: usize,
}

impl Default for FuzzConfig {
    fn default() -> Self {
        FuzzConfig {
            trials: 100,
            seed: 0,
            max_points: 10,
            max_halfplanes: 7,
            open_fraction: None,
            sample_every: 10,
            sample_trials: 2_000,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ViolationKind {
    NotPlane(Mode),
    NotSubgraph,
    BadWitness(Mode),
    /// Sampling found a placement for a pair the exact builder rejected.
    SampledEdgeMissing(Mode),
}

impl fmt::Display for ViolationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ViolationKind::NotPlane(m) => write!(f, "{m} graph is not plane"),
            ViolationKind::NotSubgraph => {
                write!(f, "translate graph is not a subgraph of homothet graph")
            }
            ViolationKind::BadWitness(m) => write!(f, "{m} witness failed verification"),
            ViolationKind::SampledEdgeMissing(m) => {
                write!(f, "sampled {m} edge missing from exact graph")
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub trial: usize,
    pub kind: ViolationKind,
    pub detail: String,
    pub instance: Instance,
}

impl Violation {
    /// The instance file, with the violation as leading comments.
    pub fn dump(&self) -> String {
        let mut out = format!("# trial {}: {}\n", self.trial, self.kind);
        for line in self.detail.lines() {
            out.push_str(&format!("# {line}\n"));
        }
        out.push_str(&emit_instance(&self.instance));
        out
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TrialOutcome {
    pub points: usize,
    pub halfplanes: usize,
    pub bounded: bool,
    pub empty_shape: bool,
    pub collinear_degenerate: bool,
    pub translate_edges: usize,
    pub homothet_edges: usize,
    pub witnesses_verified: usize,
    pub sampled: bool,
    pub sampled_edges: usize,
    pub built_edges_in_sampled: usize,
    pub built_edges_rediscovered: usize,
    pub violations: Vec<Violation>,
}

/// Plane check, witness re-verification and optional sampling for one graph.
fn check_graph(
    g: &GeometricGraph,
    instance: &Instance,
    trial: usize,
    outcome: &mut TrialOutcome,
    sample_trials: Option<usize>,
    sample_seed: u64,
) {
    let report = verify_plane(g);
    let with_mode = Instance {
        mode: g.mode(),
        ..instance.clone()
    };
    if !report.is_plane() {
        outcome.violations.push(Violation {
            trial,
            kind: ViolationKind::NotPlane(g.mode()),
            detail: format!(
                "condition 1: {:?}\ncondition 2: {:?}",
                report.condition1_violations, report.condition2_violations
            ),
            instance: with_mode.clone(),
        });
    }
    for e in g.edges() {
        if witness_is_valid(g.points(), g.shape(), e.i, e.j, &e.witness) {
            outcome.witnesses_verified += 1;
        } else {
            outcome.violations.push(Violation {
                trial,
                kind: ViolationKind::BadWitness(g.mode()),
                detail: format!("edge ({}, {}) witness {:?}", e.i, e.j, e.witness),
                instance: with_mode.clone(),
            });
        }
    }
    if let Some(trials) = sample_trials {
        let sampled = sample_edges(&with_mode, trials, sample_seed);
        outcome.sampled_edges += sampled.len();
        outcome.built_edges_in_sampled += g.edges().len();
        outcome.built_edges_rediscovered += g
            .edges()
            .iter()
            .filter(|e| sampled.contains_key(&(e.i, e.j)))
            .count();
        for (&(i, j), w) in &sampled {
            if !g.has_edge(i, j) {
                outcome.violations.push(Violation {
                    trial,
                    kind: ViolationKind::SampledEdgeMissing(g.mode()),
                    detail: format!("pair ({i}, {j}) contained alone by {w:?}"),
                    instance: with_mode.clone(),
                });
            }
        }
    }
}

pub fn fuzz_instance(cfg: &FuzzConfig, trial: usize) -> Instance {
    let mut rng = rng_for_stream(cfg.seed, trial as u64);
    let max_n = cfg.max_points.max(1);
    let n = rng.gen_range(2.min(max_n)..=max_n);
    let k = rng.gen_range(1..=cfg.max_halfplanes.max(1));
    let fractions = default_open_fractions();
    let open_fraction = cfg
        .open_fraction
        .clone()
        .unwrap_or_else(|| fractions[trial % fractions.len()].clone());
    let instance_seed: u64 = rng.gen();
    generate_instance(instance_seed, n, k, Mode::Translate, &open_fraction)
}

pub fn run_trial(cfg: &FuzzConfig, trial: usize) -> TrialOutcome {
    run_trial_with_graphs(cfg, trial).0
}

/// [`run_trial`], also returning the translate and homothet graphs that were built.
pub fn run_trial_with_graphs(
    cfg: &FuzzConfig,
    trial: usize,
) -> (TrialOutcome, Vec<GeometricGraph>) {
    let instance = fuzz_instance(cfg, trial);
    let mut outcome = TrialOutcome {
        points: instance.points.len(),
        halfplanes: instance.shape.len(),
        bounded: instance.shape.is_bounded(),
        empty_shape: instance.shape.is_empty(),
        collinear_degenerate: collinear_triple(instance.points.points()).is_some(),
        ..TrialOutcome::default()
    };
    let sample =
        (cfg.sample_every > 0 && trial % cfg.sample_every == 0).then_some(cfg.sample_trials);
    let sample_seed = instance.seed.unwrap_or(0) ^ 0x5eed;

    let mut graphs = Vec::with_capacity(2);
    for mode in [Mode::Translate, Mode::Homothet] {
        match try_build_graph(&instance.points, &instance.shape, mode) {
            Ok(g) => {
                check_graph(&g, &instance, trial, &mut outcome, sample, sample_seed);
                graphs.push(g);
            }
            Err(e) => outcome.violations.push(Violation {
                trial,
                kind: ViolationKind::BadWitness(mode),
                detail: e.to_string(),
                instance: Instance {
                    mode,
                    ..instance.clone()
                },
            }),
        }
    }
    outcome.sampled = sample.is_some();
    if let [gt, gst] = graphs.as_slice() {
        outcome.translate_edges = gt.edges().len();
        outcome.homothet_edges = gst.edges().len();
        if !is_subgraph(gt, gst).expect("same points and shape") {
            let extra: Vec<(usize, usize)> = gt
                .edge_pairs()
                .into_iter()
                .filter(|&(i, j)| !gst.has_edge(i, j))
                .collect();
            outcome.violations.push(Violation {
                trial,
                kind: ViolationKind::NotSubgraph,
                detail: format!("translate edges missing from homothet graph: {extra:?}"),
                instance: instance.clone(),
            });
        }
    }
    (outcome, graphs)
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FuzzSummary {
    pub seed: u64,
    pub trials: usize,
    pub points_total: usize,
    pub halfplanes_total: usize,
    pub unbounded_shapes: usize,
    pub empty_shapes: usize,
    pub degenerate_instances: usize,
    pub translate_edges: usize,
    pub homothet_edges: usize,
    pub max_translate_edges: usize,
    pub max_homothet_edges: usize,
    pub witnesses_verified: usize,
    pub sampled_instances: usize,
    pub sampled_edges: usize,
    pub built_edges_in_sampled: usize,
    pub built_edges_rediscovered: usize,
    pub violations: Vec<Violation>,
}

impl FuzzSummary {
    pub fn add(&mut self, o: TrialOutcome) {
        self.trials += 1;
        self.points_total += o.points;
        self.halfplanes_total += o.halfplanes;
        self.unbounded_shapes += usize::from(!o.bounded);
        self.empty_shapes += usize::from(o.empty_shape);
        self.degenerate_instances += usize::from(o.collinear_degenerate);
        self.translate_edges += o.translate_edges;
        self.homothet_edges += o.homothet_edges;
        self.max_translate_edges = self.max_translate_edges.max(o.translate_edges);
        self.max_homothet_edges = self.max_homothet_edges.max(o.homothet_edges);
        self.witnesses_verified += o.witnesses_verified;
        self.sampled_instances += usize::from(o.sampled);
        self.sampled_edges += o.sampled_edges;
        self.built_edges_in_sampled += o.built_edges_in_sampled;
        self.built_edges_rediscovered += o.built_edges_rediscovered;
        self.violations.extend(o.violations);
    }

    pub fn count(&self, pred: impl Fn(&ViolationKind) -> bool) -> usize {
        self.violations.iter().filter(|v| pred(&v.kind)).count()
    }

    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }
}

fn ratio(num: usize, den: usize) -> String {
    if den == 0 {
        "n/a".to_string()
    } else {
        format!("{num}/{den} ({:.2}%)", 100.0 * num as f64 / den as f64)
    }
}

impl fmt::Display for FuzzSummary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "seed: {}", self.seed)?;
        writeln!(f, "trials: {}", self.trials)?;
        writeln!(f, "points: {} total", self.points_total)?;
        writeln!(f, "half-planes: {} total", self.halfplanes_total)?;
        writeln!(
            f,
            "unbounded shapes: {}",
            ratio(self.unbounded_shapes, self.trials)
        )?;
        writeln!(f, "empty shapes: {}", ratio(self.empty_shapes, self.trials))?;
        writeln!(
            f,
            "degenerate instances (collinear triple): {}",
            ratio(self.degenerate_instances, self.trials)
        )?;
        writeln!(
            f,
            "translate edges: {} total, {} max",
            self.translate_edges, self.max_translate_edges
        )?;
        writeln!(
            f,
            "homothet edges: {} total, {} max",
            self.homothet_edges, self.max_homothet_edges
        )?;
        writeln!(f, "witnesses verified: {}", self.witnesses_verified)?;
        writeln!(f, "sampled instances: {}", self.sampled_instances)?;
        writeln!(f, "sampled edges: {}", self.sampled_edges)?;
        writeln!(
            f,
            "built edges rediscovered by sampling: {}",
            ratio(self.built_edges_rediscovered, self.built_edges_in_sampled)
        )?;
        let plane_t = self.count(|k| *k == ViolationKind::NotPlane(Mode::Translate));
        let plane_h = self.count(|k| *k == ViolationKind::NotPlane(Mode::Homothet));
        let subset = self.count(|k| *k == ViolationKind::NotSubgraph);
        let witness = self.count(|k| matches!(k, ViolationKind::BadWitness(_)));
        let sampled = self.count(|k| matches!(k, ViolationKind::SampledEdgeMissing(_)));
        writeln!(f, "violations: {}", self.violations.len())?;
        writeln!(f, "  translate not plane: {plane_t}")?;
        writeln!(f, "  homothet not plane: {plane_h}")?;
        writeln!(f, "  subgraph relation: {subset}")?;
        writeln!(f, "  witness verification: {witness}")?;
        writeln!(f, "  sampled edge missing: {sampled}")?;
        for v in &self.violations {
            writeln!(f, "--- violation dump ---")?;
            write!(f, "{}", v.dump())?;
        }
        Ok(())
    }
}

/// Runs every trial (concurrently) and folds the outcomes in trial order.
pub fn run_fuzz(cfg: &FuzzConfig) -> FuzzSummary {
    let outcomes: Vec<TrialOutcome> = (0..cfg.trials)
        .into_par_iter()
        .map(|t| run_trial(cfg, t))
        .collect();
    summarize(cfg, outcomes)
}

/// [`run_fuzz`], also returning each trial's graphs.
pub fn run_fuzz_with_graphs(cfg: &FuzzConfig) -> (FuzzSummary, Vec<Vec<GeometricGraph>>) {
    let (outcomes, graphs): (Vec<TrialOutcome>, Vec<Vec<GeometricGraph>>) = (0..cfg.trials)
        .into_par_iter()
        .map(|t| run_trial_with_graphs(cfg, t))
        .unzip();
    (summarize(cfg, outcomes), graphs)
}

fn summarize(cfg: &FuzzConfig, outcomes: Vec<TrialOutcome>) -> FuzzSummary {
    let mut summary = FuzzSummary {
        seed: cfg.seed,
        ..FuzzSummary::default()
    };
    for o in outcomes {
        summary.add(o);
    }
    summary
}

#[derive(Clone, Debug)]
pub struct TriangulationConfig {
    pub trials: usize,
    pub seed: u64,
    pub max_points: usize,
    pub max_halfplanes: usize,
    pub perturb_attempts: usize,
}

impl Default for TriangulationConfig {
    fn default() -> Self {
        TriangulationConfig {
            trials: 200,
            seed: 0,
            max_points: 8,
            max_halfplanes: 7,
            perturb_attempts: 30,
        }
    }
}

/// Why a point set is not in general position for a shape.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Degeneracy {
    Collinear([usize; 3]),
    BoundaryQuadruple([usize; 4]),
}

pub fn detect_degeneracy(
    points: &[Point2],
    shape: &homoplane_core::ConvexShape,
) -> Option<Degeneracy> {
    if let Some(t) = collinear_triple(points) {
        return Some(Degeneracy::Collinear(t));
    }
    boundary_quadruple(points, shape).map(|d| Degeneracy::BoundaryQuadruple(d.points))
}

/// Shifts every point by a random offset in `[-1/4, 1/4]²` with denominator 97.
fn perturb<R: Rng>(rng: &mut R, points: &PointSet) -> PointSet {
    loop {
        let moved: Vec<Point2> = points
            .points()
            .iter()
            .map(|p| {
                let dx = Scalar::new(rng.gen_range(-24i64..=24).into(), 97.into());
                let dy = Scalar::new(rng.gen_range(-24i64..=24).into(), 97.into());
                Point2::new(&p.x + dx, &p.y + dy)
            })
            .collect();
        if let Ok(ps) = PointSet::new(moved) {
            return ps;
        }
    }
}

/// How a count mismatch is accounted for.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MissCause {
    /// Four points on one homothet boundary, or three collinear points.
    Degeneracy(Degeneracy),
    /// Some convex hull edges are absent, and the graph triangulates the
    /// polygon bounded by its outer walk instead of the hull.
    HullEdgesMissing(Vec<(usize, usize)>),
    Unexplained,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TriangulationTrial {
    pub instance: Instance,
    pub perturbations: usize,
    /// Degeneracy still present after the perturbation budget ran out.
    pub residual_degeneracy: Option<Degeneracy>,
    pub check: TriangulationCheck,
    pub faces: FaceStructure,
    /// Set exactly when the edge count differs from `3n - 3 - h`.
    pub miss: Option<MissCause>,
}

/// A closed bounded full-dimensional shape and a point set perturbed until
/// no degeneracy is detected, with its homothet graph's edge count checked.
pub fn triangulation_trial(cfg: &TriangulationConfig, trial: usize) -> TriangulationTrial {
    let mut rng = rng_for_stream(cfg.seed, trial as u64);
    let shape = random_compact_shape(&mut rng, cfg.max_halfplanes);
    let n = rng.gen_range(3..=cfg.max_points.max(3));
    let mut points = random_points(&mut rng, n);
    let mut perturbations = 0;
    let mut residual = detect_degeneracy(points.points(), &shape);
    while residual.is_some() && perturbations < cfg.perturb_attempts {
        points = perturb(&mut rng, &points);
        perturbations += 1;
        residual = detect_degeneracy(points.points(), &shape);
    }
    let instance = Instance {
        points,
        shape,
        mode: Mode::Homothet,
        seed: None,
    };
    let g = try_build_graph(&instance.points, &instance.shape, Mode::Homothet)
        .expect("witnesses verify");
    let check = triangulation_check(&g);
    let faces = face_structure(&g);
    let miss = match &check {
        TriangulationCheck::Checked(r) if !r.matches => Some(if let Some(d) = residual.clone() {
            MissCause::Degeneracy(d)
        } else if !faces.missing_hull_edges.is_empty() && faces.triangulates_outer_walk() {
            MissCause::HullEdgesMissing(faces.missing_hull_edges.clone())
        } else {
            MissCause::Unexplained
        }),
        _ => None,
    };
    TriangulationTrial {
        instance,
        perturbations,
        residual_degeneracy: residual,
        check,
        faces,
        miss,
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TriangulationSummary {
    pub seed: u64,
    pub instances: usize,
    pub not_applicable: usize,
    pub perturbed_instances: usize,
    pub residual_degenerate: usize,
    pub matches: usize,
    pub misses: usize,
    pub misses_degenerate: usize,
    pub misses_hull_edges: usize,
    pub missing_hull_edges: usize,
    /// Applicable instances whose bounded faces are all triangles.
    pub outer_walk_triangulated: usize,
    pub unexplained: Vec<(usize, Instance, usize, usize)>,
}

impl TriangulationSummary {
    pub fn applicable(&self) -> usize {
        self.instances - self.not_applicable
    }

    /// Fraction of applicable instances whose edge count matched.
    pub fn match_rate(&self) -> f64 {
        if self.applicable() == 0 {
            return 1.0;
        }
        self.matches as f64 / self.applicable() as f64
    }

    /// Misses attributed to a detected degeneracy.
    pub fn misses_traced(&self) -> usize {
        self.misses_degenerate
    }
}

impl fmt::Display for TriangulationSummary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "seed: {}", self.seed)?;
        writeln!(f, "instances: {}", self.instances)?;
        writeln!(f, "not applicable: {}", self.not_applicable)?;
        writeln!(
            f,
            "perturbed to remove degeneracies: {}",
            self.perturbed_instances
        )?;
        writeln!(
            f,
            "still degenerate after perturbation: {}",
            self.residual_degenerate
        )?;
        writeln!(
            f,
            "edge count = 3n - 3 - h: {}",
            ratio(self.matches, self.applicable())
        )?;
        writeln!(f, "misses: {}", self.misses)?;
        writeln!(
            f,
            "  traced to a detected degeneracy: {}",
            self.misses_degenerate
        )?;
        writeln!(
            f,
            "  hull edges missing, outer walk triangulated: {} ({} hull edges)",
            self.misses_hull_edges, self.missing_hull_edges
        )?;
        writeln!(f, "  unexplained: {}", self.unexplained.len())?;
        writeln!(
            f,
            "every bounded face a triangle: {}",
            ratio(self.outer_walk_triangulated, self.applicable())
        )?;
        for (trial, inst, edges, expected) in &self.unexplained {
            writeln!(
                f,
                "--- unexplained miss: trial {trial}, {edges} edges, expected {expected} ---"
            )?;
            write!(f, "{}", emit_instance(inst))?;
        }
        Ok(())
    }
}

pub fn run_triangulation_study(cfg: &TriangulationConfig) -> TriangulationSummary {
    let trials: Vec<TriangulationTrial> = (0..cfg.trials)
        .into_par_iter()
        .map(|t| triangulation_trial(cfg, t))
        .collect();
    let mut s = TriangulationSummary {
        seed: cfg.seed,
        instances: trials.len(),
        ..Default::default()
    };
    for (t, tr) in trials.into_iter().enumerate() {
        s.perturbed_instances += usize::from(tr.perturbations > 0);
        s.residual_degenerate += usize::from(tr.residual_degeneracy.is_some());
        let TriangulationCheck::Checked(r) = &tr.check else {
            s.not_applicable += 1;
            continue;
        };
        s.outer_walk_triangulated += usize::from(tr.faces.triangulates_outer_walk());
        match &tr.miss {
            None => s.matches += 1,
            Some(cause) => {
                s.misses += 1;
                match cause {
                    MissCause::Degeneracy(_) => s.misses_degenerate += 1,
                    MissCause::HullEdgesMissing(edges) => {
                        s.misses_hull_edges += 1;
                        s.missing_hull_edges += edges.len();
                    }
                    MissCause::Unexplained => {
                        s.unexplained
                            .push((t, tr.instance.clone(), r.edge_count, r.expected_count))
                    }
                }
            }
        }
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_fuzz_is_clean_and_reproducible() {
        let cfg = FuzzConfig {
            trials: 12,
            seed: 3,
            max_points: 6,
            max_halfplanes: 5,
            sample_every: 4,
            sample_trials: 500,
            ..FuzzConfig::default()
        };
        let a = run_fuzz(&cfg);
        assert!(a.is_clean(), "{a}");
        assert_eq!(a.trials, 12);
        assert_eq!(a.sampled_instances, 3);
        assert_eq!(a.to_string(), run_fuzz(&cfg).to_string());
    }

    #[test]
    fn violation_dump_parses_back() {
        let cfg = FuzzConfig::default();
        let instance = fuzz_instance(&cfg, 1);
        let v = Violation {
            trial: 1,
            kind: ViolationKind::NotSubgraph,
            detail: "a\nb".into(),
            instance: instance.clone(),
        };
        let dump = v.dump();
        assert!(dump.starts_with("# trial 1: translate graph is not a subgraph"));
        assert_eq!(crate::instance::parse_instance(&dump).unwrap(), instance);
    }
}
