//! Task orchestration: scenario in, report out.

use std::collections::BTreeMap;
use std::time::Instant;

use serde::Serialize;
use serde_json::{json, Map, Value};
use weylkit::isotropy::{extend_maximal, is_isotropic, is_maximal_isotropic, polar, polar_tilde};
use weylkit::linalg::{CMatrix, UnitaryMatrix};
use weylkit::multiplier::{antisymmetrize, check_multiplier_seeded, is_heisenberg, split_symmetric, DEFAULT_SEED};
use weylkit::padic::{vacuum_profile, window_weyl, PAdicWindow};
use weylkit::vacuum::{clifford_basis, descend, sectors, structure_report};
use weylkit::weyl::{check_rep_law_with, commutant_d, commutator_scalar_check_with, induced_model, intertwiner, schrodinger_model, MAX_DIM};
use weylkit::{window_group, Check, Error, GroupElement, Multiplier, Rep, Result, SplittingData, Subgroup, VerificationReport};

use crate::scenario::{Scenario, Task, WindowSpec};

pub const DEFAULT_TOLERANCE: f64 = 1e-9;

/// Command-line overrides; `None` falls back to the scenario, then to defaults.
#[derive(Clone, Debug, Default)]
pub struct Options {
    pub tolerance: Option<f64>,
    pub seed: Option<u64>,
    pub max_dim: Option<usize>,
    pub timings: bool,
    pub window: Option<WindowSpec>,
    pub full_report: bool,
}

/// Everything a run emits.
#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub task: &'static str,
    pub scenario: Scenario,
    pub seed: u64,
    pub tolerance: f64,
    pub versions: BTreeMap<&'static str, &'static str>,
    pub pass: bool,
    pub checks: Vec<Check>,
    pub results: Map<String, Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timings: Option<BTreeMap<String, f64>>,
}

impl Report {
    /// 0 when every check passes, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        if self.pass {
            0
        } else {
            1
        }
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("task: {}\nseed: {}\ntolerance: {:e}\n", self.task, self.seed, self.tolerance);
        for c in &self.checks {
            out.push_str(&format!("{c}\n"));
        }
        out.push_str("results:\n");
        for (k, v) in &self.results {
            out.push_str(&format!("  {k}: {v}\n"));
        }
        if let Some(t) = &self.timings {
            for (k, v) in t {
                out.push_str(&format!("  time {k}: {v:.3}s\n"));
            }
        }
        out.push_str(if self.pass { "verdict: PASS\n" } else { "verdict: FAIL\n" });
        out
    }
}

/// Exit code for an error: internal defects count as failed checks, everything else as bad input.
pub fn error_exit_code(e: &Error) -> i32 {
    match e {
        Error::Defect(_) => 1,
        _ => 2,
    }
}

struct Ctx<'a> {
    scenario: &'a Scenario,
    opts: &'a Options,
    tol: f64,
    seed: u64,
    max_dim: usize,
    report: VerificationReport,
    results: Map<String, Value>,
}

impl Ctx<'_> {
    fn set(&mut self, key: &str, value: impl Serialize) {
        self.results.insert(key.to_string(), serde_json::to_value(value).expect("serializable result"));
    }

    fn window(&self) -> Result<Option<PAdicWindow>> {
        self.opts.window.or(self.scenario.window).map(|w| window_group(w.p, w.k, w.d)).transpose()
    }

    fn check_dim(&self, dim: usize) -> Result<()> {
        if dim > self.max_dim {
            return Err(Error::Resource(format!("representation dimension {dim} exceeds --max-dim {}", self.max_dim)));
        }
        Ok(())
    }
}

/// Runs `task` on `scenario`.
pub fn run(task: Task, scenario: Scenario, opts: &Options) -> Result<Report> {
    if let Some(t) = scenario.task {
        if t != task {
            return Err(Error::Input(format!("scenario is for task {}, invoked as {}", t.name(), task.name())));
        }
    }
    let start = Instant::now();
    let mut ctx = Ctx {
        scenario: &scenario,
        opts,
        tol: opts.tolerance.or(scenario.tolerance).unwrap_or(DEFAULT_TOLERANCE),
        seed: opts.seed.or(scenario.seed).unwrap_or(DEFAULT_SEED),
        max_dim: opts.max_dim.unwrap_or(MAX_DIM),
        report: VerificationReport::new(),
        results: Map::new(),
    };
    if !(ctx.tol.is_finite() && ctx.tol >= 0.0) {
        return Err(Error::Input(format!("tolerance {} must be a nonnegative number", ctx.tol)));
    }
    match task {
        Task::Verify => verify(&mut ctx)?,
        Task::Isotropy => isotropy(&mut ctx)?,
        Task::Model => model(&mut ctx)?,
        Task::Vacuum => vacuum(&mut ctx)?,
        Task::Fermion => fermion(&mut ctx)?,
        Task::Padic => padic(&mut ctx)?,
        Task::Svn => svn(&mut ctx)?,
    }
    let timings = opts.timings.then(|| BTreeMap::from([("total".to_string(), start.elapsed().as_secs_f64())]));
    let Ctx { tol, seed, report, results, .. } = ctx;
    Ok(Report {
        task: task.name(),
        scenario,
        seed,
        tolerance: tol,
        versions: BTreeMap::from([("weylkit", env!("CARGO_PKG_VERSION"))]),
        pass: report.all_pass(),
        checks: report.checks,
        results,
        timings,
    })
}

fn verify(ctx: &mut Ctx) -> Result<()> {
    let m = ctx.scenario.multiplier()?;
    let checks = check_multiplier_seeded(&m, ctx.seed);
    let cocycle = checks.all_pass();
    ctx.report.extend(checks);
    ctx.set("group", m.group().moduli());
    ctx.set("group_order", m.group().order());
    if !cocycle {
        return Ok(());
    }
    let t = antisymmetrize(&m)?;
    ctx.report.push(Check::exact("antisymmetrization alternating", t.is_alternating()));
    ctx.set("alternating_bicharacter", m.as_bicharacter().is_some_and(|b| b.is_alternating()));
    ctx.set("antisymmetrization", t.matrix());
    ctx.set("heisenberg", is_heisenberg(&m)?);
    ctx.set("radical_order", t.radical().order());
    Ok(())
}

fn generators(s: &Subgroup) -> Vec<GroupElement> {
    s.basis_generators()
}

fn isotropy(ctx: &mut Ctx) -> Result<()> {
    let m = ctx.scenario.multiplier()?;
    let g = m.group().clone();
    let a = ctx.scenario.subgroup(&g)?.unwrap_or_else(|| Subgroup::trivial(&g));
    let p = polar(&a, &m)?;
    let p3 = polar(&polar(&p, &m)?, &m)?;
    ctx.report.push(Check::exact("polar^3 = polar", p3 == p));
    ctx.set("subgroup_order", a.order());
    ctx.set("isotropic", is_isotropic(&a, &m)?);
    ctx.set("maximal_isotropic", is_maximal_isotropic(&a, &m)?);
    ctx.set("polar_generators", generators(&p));
    ctx.set("polar_order", p.order());
    if m.as_bicharacter().is_some_and(|b| b.is_alternating()) {
        match polar_tilde(&a, &m) {
            Ok((l, _)) => {
                ctx.report.push(Check::exact("polar of m~ is half the polar of m", true));
                ctx.set("polar_tilde_order", l.order());
            }
            Err(Error::Defect(msg)) => ctx.report.push(Check::exact("polar of m~ is half the polar of m", false).with_detail(msg)),
            Err(e) => return Err(e),
        }
    }
    if is_isotropic(&a, &m)? {
        match extend_maximal(&a, &m) {
            Ok(e) => {
                ctx.set("maximal_extension", generators(&e));
                ctx.set("maximal_extension_order", e.order());
            }
            Err(Error::Precondition(msg)) => ctx.set("maximal_extension_error", msg),
            Err(e) => return Err(e),
        }
    }
    Ok(())
}

/// `c` with `c(a+b) − c(a) − c(b) = m(b,a)` on `A`, from the scenario or solved for.
fn splitting_for(ctx: &Ctx, m: &Multiplier, a: &Subgroup) -> Result<SplittingData> {
    if let Some(c) = ctx.scenario.splitting(a)? {
        return Ok(c);
    }
    let els = a.elements();
    if els.iter().all(|x| els.iter().all(|y| m.eval(x, y).is_zero())) {
        return Ok(SplittingData::zero(a));
    }
    let transposed = Multiplier::from_fn(m.group(), |x, y| m.eval(y, x))?;
    split_symmetric(&transposed, a)
}

/// The representation a scenario describes, with the subgroup its vacuum is taken over.
fn build_model(ctx: &mut Ctx) -> Result<(Rep, Subgroup, Option<PAdicWindow>)> {
    if let Some(w) = ctx.window()? {
        let dim = w.rep_dim().unwrap_or(usize::MAX);
        ctx.check_dim(dim)?;
        let rep = window_weyl(&w)?;
        ctx.set("window", json!({"p": w.p(), "k": w.k(), "d": w.d(), "modulus": w.modulus()}));
        ctx.set("construction", "window");
        return Ok((rep, w.lattice().clone(), Some(w)));
    }
    let m = ctx.scenario.multiplier()?;
    let g = m.group().clone();
    match (ctx.scenario.subgroup(&g)?, ctx.scenario.pairing()?) {
        (Some(a), _) => {
            ctx.check_dim(a.index() as usize)?;
            let c = splitting_for(ctx, &m, &a)?;
            ctx.set("construction", "induced");
            ctx.set("splitting", c.elements().iter().zip(c.values()).map(|(x, v)| (x.to_string(), v.to_string())).collect::<BTreeMap<_, _>>());
            Ok((induced_model(&m, &a, &c)?, a, None))
        }
        (None, Some(pairing)) => {
            ctx.check_dim(pairing.right().order() as usize)?;
            let rep = schrodinger_model(&pairing)?;
            let r = pairing.left().rank();
            let gens: Vec<GroupElement> = (0..r).map(|i| g.basis_element(i)).collect();
            ctx.set("construction", "schrodinger");
            Ok((rep, Subgroup::span(&g, &gens)?, None))
        }
        (None, None) => Err(Error::Input("a model needs a subgroup, a Weyl-product multiplier or a window".into())),
    }
}

fn render(w: &Option<PAdicWindow>, x: &GroupElement) -> String {
    match w {
        Some(w) => w.render(x),
        None => x.to_string(),
    }
}

fn monomial_json(u: &UnitaryMatrix<f64>) -> Value {
    match u {
        UnitaryMatrix::Monomial(m) => json!({"perm": m.perm(), "phases": m.phases()}),
        UnitaryMatrix::Dense(d) => dense_json(d),
    }
}

fn round(x: f64) -> f64 {
    let r = (x * 1e12).round() / 1e12;
    if r == 0.0 {
        0.0
    } else {
        r
    }
}

fn dense_json(d: &CMatrix<f64>) -> Value {
    let rows: Vec<Vec<[f64; 2]>> = (0..d.nrows()).map(|i| (0..d.ncols()).map(|j| [round(d[(i, j)].re), round(d[(i, j)].im)]).collect()).collect();
    json!(rows)
}

fn laws(ctx: &mut Ctx, rep: &Rep, prefix: &str) {
    ctx.report.extend_prefixed(prefix, check_rep_law_with(rep, ctx.tol, ctx.seed));
    ctx.report.extend_prefixed(prefix, commutator_scalar_check_with(rep, ctx.tol, ctx.seed));
}

fn model(ctx: &mut Ctx) -> Result<()> {
    let (rep, _, w) = build_model(ctx)?;
    laws(ctx, &rep, "model");
    let c = commutant_d(&rep)?;
    ctx.set("dim", rep.dim());
    ctx.set("general_branch", rep.general_branch());
    ctx.set("commutant_d", c);
    ctx.set("irreducible", c == 1);
    if rep.dim() <= 16 {
        let gens: BTreeMap<String, Value> = rep.generators().iter().map(|x| (render(&w, x), monomial_json(&rep.operator(x)))).collect();
        ctx.set("generators", gens);
    }
    Ok(())
}

fn sector_summary(ctx: &mut Ctx, labels: Vec<(String, usize)>) {
    if labels.len() <= 64 || ctx.opts.full_report {
        ctx.set("sector_dims", labels.into_iter().collect::<BTreeMap<_, _>>());
    } else {
        let mut hist: BTreeMap<usize, usize> = BTreeMap::new();
        for (_, n) in labels {
            *hist.entry(n).or_default() += 1;
        }
        ctx.set("sector_dim_counts", hist.into_iter().map(|(k, v)| (k.to_string(), v)).collect::<BTreeMap<_, _>>());
    }
}

fn vacuum(ctx: &mut Ctx) -> Result<()> {
    let (rep, l, w) = build_model(ctx)?;
    let report = structure_report(&rep, &l, ctx.tol)?;
    let verdicts: BTreeMap<String, bool> =
        report.checks.iter().filter(|c| c.name.starts_with("normalizer.")).map(|c| (c.name["normalizer.".len()..].to_string(), c.pass)).collect();
    ctx.report.extend(report);
    let s = sectors(&rep, &l)?;
    let labels = s.labels().iter().zip(s.dims()).map(|(y, n)| (render(&w, y), n)).collect();
    sector_summary(ctx, labels);
    ctx.set("dim", rep.dim());
    ctx.set("vacuum_dim", s.vacuum().ncols());
    ctx.set("label_form", if s.label_form().uses_multiplier() { "multiplier" } else { "antisymmetrized multiplier" });
    ctx.set("normalizer_order", weylkit::vacuum::normalizer(&rep, &l)?.order());
    ctx.set("normalizer_verdicts", verdicts);
    Ok(())
}

fn fermion(ctx: &mut Ctx) -> Result<()> {
    let (rep, l, w) = build_model(ctx)?;
    let desc = descend(&rep, &l)?;
    ctx.report.push(Check::exact("descended.lift", desc.lift_matches));
    laws(ctx, &desc.rep, "descended");
    ctx.set("vacuum_dim", desc.vacuum.ncols());
    ctx.set("v2_order", desc.v2().order());
    ctx.set("section", desc.section().iter().map(|x| render(&w, x)).collect::<Vec<_>>());
    ctx.set("commutant_descended", commutant_d(&desc.rep)?);
    if desc.v2().is_trivial() {
        ctx.set("d", 0);
        return Ok(());
    }
    let c = clifford_basis(&desc)?;
    ctx.report.extend_prefixed("fermion", c.report(ctx.tol));
    ctx.set("d", c.d());
    ctx.set("clifford_elements", c.elements.iter().map(|x| render(&w, desc.quotient.section(x))).collect::<Vec<_>>());
    ctx.set("clifford_gram", &c.gram);
    ctx.set("clifford_residual_max", c.residual());
    if c.operators.first().is_some_and(|e| e.nrows() <= 8) {
        ctx.set("clifford_operators", c.operators.iter().map(dense_json).collect::<Vec<_>>());
    }
    Ok(())
}

fn padic(ctx: &mut Ctx) -> Result<()> {
    let w = ctx.window()?.ok_or_else(|| Error::Input("padic needs a window: --p/--k/--d or a \"window\" entry".into()))?;
    ctx.check_dim(w.rep_dim().unwrap_or(usize::MAX))?;
    let profile = vacuum_profile(&w, ctx.tol)?;
    ctx.report.extend(profile.report.clone());
    let Value::Object(mut fields) = serde_json::to_value(&profile).expect("serializable profile") else {
        unreachable!("profile serializes to an object")
    };
    fields.remove("report");
    let sectors = fields.remove("sector_dims");
    for (k, v) in fields {
        ctx.results.insert(k, v);
    }
    if let Some(Value::Object(map)) = sectors {
        let labels = map.into_iter().map(|(k, v)| (k, v.as_u64().unwrap_or(0) as usize)).collect();
        sector_summary(ctx, labels);
    }
    Ok(())
}

fn svn(ctx: &mut Ctx) -> Result<()> {
    let m = ctx.scenario.multiplier()?;
    let g = m.group().clone();
    let mut subs = ctx.scenario.subgroups(&g)?;
    if subs.is_empty() {
        if let Some(a) = ctx.scenario.subgroup(&g)? {
            subs.push(a);
        }
    }
    if subs.len() == 1 {
        let tilde = Multiplier::bicharacter(antisymmetrize(&m)?)?;
        subs.push(extend_maximal(&Subgroup::trivial(&g), &tilde)?);
    }
    if subs.len() != 2 {
        return Err(Error::Input(format!("svn needs two subgroups, got {}", subs.len())));
    }
    let mut reps = Vec::new();
    for a in &subs {
        ctx.check_dim(a.index() as usize)?;
        let c = splitting_for(ctx, &m, a)?;
        reps.push(induced_model(&m, a, &c)?);
    }
    let t = intertwiner(&reps[0], &reps[1])?;
    ctx.report.push(Check::exact("intertwiner dimension", t.dimension == 1).with_detail(format!("dimension {}", t.dimension)));
    let defect = t.normalized_unitary_defect().unwrap_or(f64::INFINITY);
    ctx.report.push(Check::numeric("intertwiner unitary", defect, ctx.tol));
    ctx.set("subgroups", subs.iter().map(generators).collect::<Vec<_>>());
    ctx.set("dims", reps.iter().map(|r| r.dim()).collect::<Vec<_>>());
    ctx.set("intertwiner_dimension", t.dimension);
    ctx.set("exact", t.exact);
    if let (1, Some(b)) = (t.dimension, t.basis.first()) {
        if b.nrows() <= 16 {
            ctx.set("intertwiner", dense_json(&normalized(b)));
        }
    }
    Ok(())
}

/// `T` scaled to be unitary when it is a multiple of one, with its first nonzero entry real positive.
fn normalized(t: &CMatrix<f64>) -> CMatrix<f64> {
    let n = t.ncols() as f64;
    let scale = (n / (t.adjoint() * t).trace().re).sqrt();
    let pivot = t.iter().find(|z| z.norm() > 1e-9).copied().unwrap_or(num_complex::Complex::new(1.0, 0.0));
    t * num_complex::Complex::new(scale, 0.0) * (pivot.conj() / pivot.norm())
}
