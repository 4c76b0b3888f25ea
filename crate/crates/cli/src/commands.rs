use std::collections::HashSet;

use clap::ValueEnum;
use hypbill::billiard::{
    code_text, decode_periodic, random_admissible_periodic, random_arc, simulate, trajectory_csv, BaseArc,
    BilliardError, TrajectoryRow, TrajectoryWindow,
};
use hypbill::hypgeo::{DiskIsometry, DiskPoint};
use hypbill::polygon::{unfold, validate_with, CheckedPolygon, PolygonSummary};
use hypbill::sftlab::{analyze, AnalysisReport, Truth};
use hypbill::shiftspace::{
    alphabet_minimized_distance, convergence_csv, run_experiment, subshift_hausdorff, Witness, DEFAULT_BUDGET,
};
use hypbill::symdyn::{forbidden_set, Letter, Word};
use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::config::{Loaded, StartConfig};
use crate::error::CliError;
use crate::svg::Scene;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
    Svg,
}

impl Format {
    fn name(self) -> &'static str {
        match self {
            Format::Json => "json",
            Format::Csv => "csv",
            Format::Text => "text",
            Format::Svg => "svg",
        }
    }
}

/// Flags shared by all subcommands; they override the config file.
#[derive(Debug, Clone, Default)]
pub struct Overrides {
    pub format: Option<Format>,
    pub seed: Option<u64>,
    pub depth: Option<usize>,
    pub budget: Option<usize>,
    pub theta: Option<f64>,
    pub phi: Option<f64>,
    pub n_future: Option<usize>,
    pub n_past: Option<usize>,
    pub word: Option<String>,
}

const DEFAULT_FUTURE: usize = 20;
const DEFAULT_PERIOD: usize = 6;
const DEFAULT_MAX_M: usize = 12;
const DEFAULT_RENDER_STEPS: usize = 10;
const MAX_COPIES: usize = 50_000;

pub struct Ctx<'a> {
    pub loaded: &'a Loaded,
    pub flags: &'a Overrides,
}

impl Ctx<'_> {
    pub fn format(&self, default: Format, allowed: &[Format], command: &str) -> Result<Format, CliError> {
        let f = self.flags.format.unwrap_or(default);
        if allowed.contains(&f) {
            Ok(f)
        } else {
            Err(CliError::Parse(format!(
                "{command} does not support --format {}",
                f.name()
            )))
        }
    }

    fn seed(&self) -> u64 {
        self.flags.seed.or(self.loaded.config.seed).unwrap_or(0)
    }

    fn rng(&self) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed())
    }

    fn budget(&self) -> Result<Option<usize>, CliError> {
        match self.flags.budget.or(self.loaded.config.budget) {
            Some(0) => Err(CliError::domain("InvalidBudget", "budget must be positive")),
            b => Ok(b),
        }
    }

    fn depth(&self) -> Option<usize> {
        self.flags.depth.or(self.loaded.config.depth)
    }

    fn word(&self) -> Result<Option<Word>, CliError> {
        match self.flags.word.as_ref().or(self.loaded.config.word.as_ref()) {
            Some(w) => Ok(Some(Word::parse(w)?)),
            None => Ok(None),
        }
    }

    fn polygon(&self) -> Result<CheckedPolygon, CliError> {
        let spec = self.loaded.polygon()?;
        Ok(validate_with(&spec, &self.loaded.tolerances())?)
    }
}

fn json<T: Serialize + ?Sized>(v: &T) -> Result<String, CliError> {
    let mut s = serde_json::to_string_pretty(v).map_err(|e| CliError::Parse(e.to_string()))?;
    s.push('\n');
    Ok(s)
}

fn truth(t: Truth) -> &'static str {
    match t {
        Truth::True => "true",
        Truth::False => "false",
        Truth::Unknown => "unknown",
    }
}

#[derive(Serialize)]
struct ValidateReport {
    status: &'static str,
    polygon: PolygonSummary,
}

pub fn validate(ctx: &Ctx) -> Result<String, CliError> {
    let format = ctx.format(Format::Json, &[Format::Json, Format::Text], "validate")?;
    let summary = PolygonSummary::of(&ctx.polygon()?);
    match format {
        Format::Text => {
            let angles: Vec<String> = summary.angles_rad.iter().map(|a| format!("{a:.12}")).collect();
            Ok(format!(
                "class: {}\nk: {}\nangles_rad: {}\narea: {:.12}\n",
                summary.class,
                summary.k,
                angles.join(" "),
                summary.area
            ))
        }
        _ => json(&ValidateReport {
            status: "ok",
            polygon: summary,
        }),
    }
}

fn start_arc(ctx: &Ctx, p: &CheckedPolygon) -> Result<BaseArc, CliError> {
    if let (Some(theta), Some(phi)) = (ctx.flags.theta, ctx.flags.phi) {
        return Ok(BaseArc::from_endpoints(p, theta, phi)?);
    }
    if ctx.flags.theta.is_some() || ctx.flags.phi.is_some() {
        return Err(CliError::Parse("--theta and --phi must be given together".into()));
    }
    let start = ctx
        .loaded
        .config
        .start
        .as_ref()
        .ok_or_else(|| CliError::Parse("no start arc: give --theta/--phi or a start in the config".into()))?;
    Ok(match start {
        StartConfig::Endpoints { theta_rad, phi_rad } => BaseArc::from_endpoints(p, *theta_rad, *phi_rad)?,
        StartConfig::Through { point, psi_rad } => {
            let x = DiskPoint::new(point[0], point[1]).map_err(BilliardError::from)?;
            BaseArc::through(p, x, *psi_rad)?
        }
        StartConfig::Random => random_arc(p, &mut ctx.rng())?,
        StartConfig::Periodic { word } => {
            let w = decode_periodic(p, &Word::parse(word)?)?;
            *w.get(0).expect("decoded windows contain index 0")
        }
    })
}

fn run_simulation(
    ctx: &Ctx,
    p: &CheckedPolygon,
    n_future: usize,
) -> Result<(TrajectoryWindow, Option<String>), CliError> {
    let start = start_arc(ctx, p)?;
    let n_past = ctx.flags.n_past.or(ctx.loaded.config.n_past).unwrap_or(0);
    match simulate(p, start, n_future, n_past) {
        Ok(w) => Ok((w, None)),
        Err(BilliardError::TerminatedAtVertex { index, window }) => Ok((
            *window,
            Some(format!("trajectory terminated at a vertex at index {index}")),
        )),
        Err(BilliardError::EscapedToIdealVertex { index, window }) => Ok((
            *window,
            Some(format!("trajectory escaped to an ideal vertex at index {index}")),
        )),
        Err(e) => Err(e.into()),
    }
}

#[derive(Serialize)]
struct SimulateReport {
    status: &'static str,
    warning: Option<String>,
    code: String,
    rows: Vec<TrajectoryRow>,
}

pub fn simulate_cmd(ctx: &Ctx) -> Result<String, CliError> {
    let format = ctx.format(Format::Csv, &[Format::Csv, Format::Text, Format::Json], "simulate")?;
    let p = ctx.polygon()?;
    let n_future = ctx
        .flags
        .n_future
        .or(ctx.loaded.config.n_future)
        .unwrap_or(DEFAULT_FUTURE);
    let (window, warning) = run_simulation(ctx, &p, n_future)?;
    if let Some(w) = &warning {
        log::warn!("{w}");
    }
    match format {
        Format::Csv => trajectory_csv(&window).map_err(|e| CliError::Parse(e.to_string())),
        Format::Text => Ok(code_text(&window)),
        _ => json(&SimulateReport {
            status: "ok",
            warning,
            code: window.code().to_string(),
            rows: window.rows(),
        }),
    }
}

#[derive(Serialize)]
struct DecodeReport {
    word: String,
    code: String,
    theta_rad: f64,
    phi_rad: f64,
    rows: Vec<TrajectoryRow>,
}

fn decode_word(ctx: &Ctx, p: &CheckedPolygon) -> Result<Word, CliError> {
    if let Some(w) = ctx.word()? {
        return Ok(w);
    }
    let spec = forbidden_set(p.spec())?;
    let period = ctx.loaded.config.period.unwrap_or(DEFAULT_PERIOD);
    random_admissible_periodic(&spec, period, &mut ctx.rng()).ok_or_else(|| {
        CliError::domain(
            "NoAdmissibleWord",
            format!("no admissible periodic word of period {period} was found"),
        )
    })
}

pub fn decode(ctx: &Ctx) -> Result<String, CliError> {
    let format = ctx.format(Format::Json, &[Format::Json, Format::Csv, Format::Text], "decode")?;
    let p = ctx.polygon()?;
    let word = decode_word(ctx, &p)?;
    let window = decode_periodic(&p, &word)?;
    let arc = window.get(0).expect("decoded windows contain index 0");
    match format {
        Format::Csv => trajectory_csv(&window).map_err(|e| CliError::Parse(e.to_string())),
        Format::Text => Ok(code_text(&window)),
        _ => json(&DecodeReport {
            word: word.to_string(),
            code: window.code().to_string(),
            theta_rad: arc.theta().rad(),
            phi_rad: arc.phi().rad(),
            rows: window.rows(),
        }),
    }
}

fn analysis_text(r: &AnalysisReport) -> String {
    let perron = r.perron.map_or("none".to_string(), |v| format!("{v:.12}"));
    format!(
        "k: {}\nforbidden: {}\nessential_vertices: {}\nperron: {perron}\nentropy: {:.12}\ntransitive: {}\nmixing: {}\n",
        r.k,
        r.forbidden.join(" "),
        r.essential_vertices,
        r.entropy,
        truth(r.transitive),
        truth(r.mixing)
    )
}

pub fn analyze_cmd(ctx: &Ctx) -> Result<String, CliError> {
    let format = ctx.format(Format::Json, &[Format::Json, Format::Text], "analyze")?;
    let spec = ctx.loaded.polygon()?;
    let report = analyze(&forbidden_set(&spec)?)?;
    match format {
        Format::Text => Ok(analysis_text(&report)),
        _ => json(&report),
    }
}

#[derive(Serialize)]
struct DistanceReport {
    first: String,
    second: String,
    distance_exponent: Option<usize>,
    distance: f64,
    equal_within_budget: bool,
    max_m: usize,
    witness: Option<Witness>,
    relabeling: Option<Vec<Letter>>,
}

pub fn distance(ctx: &Ctx) -> Result<String, CliError> {
    let format = ctx.format(Format::Json, &[Format::Json, Format::Text], "distance")?;
    let c = &ctx.loaded.config;
    let missing = |which: &str| CliError::Parse(format!("config has no `{which}` shift"));
    let x = ctx
        .loaded
        .shift(c.first.as_ref().ok_or_else(|| missing("first"))?, "first")?;
    let y = ctx
        .loaded
        .shift(c.second.as_ref().ok_or_else(|| missing("second"))?, "second")?;
    let max_m = c.max_m.or(ctx.depth()).unwrap_or(DEFAULT_MAX_M);
    let budget = ctx.budget()?.unwrap_or(DEFAULT_BUDGET);
    let (d, relabeling) = if c.relabel {
        let (d, perm) = alphabet_minimized_distance(&x, &y, max_m, budget)?;
        (d, Some(perm))
    } else {
        (subshift_hausdorff(&x, &y, max_m, budget)?, None)
    };
    let report = DistanceReport {
        first: x.name().to_string(),
        second: y.name().to_string(),
        distance_exponent: d.exponent,
        distance: d.value(),
        equal_within_budget: d.is_equal_within_budget(),
        max_m,
        witness: d.witness.clone(),
        relabeling,
    };
    match format {
        Format::Text => {
            let mut s = format!("d_H = {d}\n");
            if let Some(w) = &report.witness {
                let side = if w.in_first { "first" } else { "second" };
                s.push_str(&format!("witness: {} (only in {side})\n", w.word));
            }
            Ok(s)
        }
        _ => json(&report),
    }
}

pub fn converge(ctx: &Ctx) -> Result<String, CliError> {
    let format = ctx.format(Format::Csv, &[Format::Csv, Format::Json], "converge")?;
    let mut c = ctx.loaded.experiment()?;
    if let Some(d) = ctx.flags.depth {
        c.depth = d;
    }
    if let Some(b) = ctx.budget()? {
        c.budget = b;
    }
    let rows = run_experiment(&c)?;
    match format {
        Format::Json => json(&rows),
        _ => convergence_csv(&rows).map_err(|e| CliError::Parse(e.to_string())),
    }
}

fn vertices(p: &CheckedPolygon, g: &DiskIsometry) -> Vec<Complex64> {
    p.vertices().iter().map(|v| v.map(g).to_complex()).collect()
}

/// All tiles reached by at most `depth` reflections.
fn tessellation(p: &CheckedPolygon, depth: usize) -> Result<Vec<Vec<Complex64>>, CliError> {
    let key = |g: &DiskIsometry| {
        let c = g.apply(p.center());
        ((c.re() * 1e9).round() as i64, (c.im() * 1e9).round() as i64)
    };
    let id = DiskIsometry::identity();
    let mut seen = HashSet::from([key(&id)]);
    let mut tiles = vec![vertices(p, &id)];
    let mut frontier = vec![(0usize, id)];
    for _ in 0..depth {
        let mut next = Vec::new();
        for (last, g) in &frontier {
            for label in (1..=p.k()).filter(|l| l != last) {
                let h = g.compose(&p.reflection(label)?);
                if seen.insert(key(&h)) {
                    tiles.push(vertices(p, &h));
                    next.push((label, h));
                }
            }
        }
        if tiles.len() > MAX_COPIES {
            return Err(CliError::domain(
                "TooManyCopies",
                format!("depth {depth} needs more than {MAX_COPIES} copies"),
            ));
        }
        frontier = next;
    }
    Ok(tiles)
}

fn unfolded_scene(p: &CheckedPolygon, letters: &[usize], arc: Option<&BaseArc>) -> Result<Scene, CliError> {
    let mut scene = Scene {
        polygons: vec![vertices(p, &DiskIsometry::identity())],
        geodesics: Vec::new(),
    };
    if !letters.is_empty() {
        for copy in unfold(p, letters)? {
            scene
                .polygons
                .push(copy.vertices.iter().map(|v| v.to_complex()).collect());
        }
    }
    if let Some(a) = arc {
        scene.geodesics.push((a.theta().to_complex(), a.phi().to_complex()));
    }
    Ok(scene)
}

fn hit_sides(w: &TrajectoryWindow) -> Vec<usize> {
    w.indexed().filter(|(i, _)| *i >= 0).map(|(_, a)| a.hit_side).collect()
}

pub fn render(ctx: &Ctx) -> Result<String, CliError> {
    ctx.format(Format::Svg, &[Format::Svg], "render")?;
    let p = ctx.polygon()?;
    let c = &ctx.loaded.config;
    let scene = if let Some(word) = ctx.word()? {
        if c.orbit {
            let window = decode_periodic(&p, &word)?;
            let mut letters = hit_sides(&window);
            letters.extend_from_within(..);
            unfolded_scene(&p, &letters, window.get(0))?
        } else {
            let letters: Vec<usize> = word.letters().iter().map(|&a| a as usize).collect();
            unfolded_scene(&p, &letters, None)?
        }
    } else if c.start.is_some() || ctx.flags.theta.is_some() {
        let n = ctx.flags.n_future.or(c.n_future).unwrap_or(DEFAULT_RENDER_STEPS);
        let (window, warning) = run_simulation(ctx, &p, n)?;
        if let Some(w) = &warning {
            log::warn!("{w}");
        }
        let mut letters = hit_sides(&window);
        // The last hit side leads into a copy beyond the simulated window.
        letters.pop();
        unfolded_scene(&p, &letters, window.get(0))?
    } else {
        Scene {
            polygons: tessellation(&p, ctx.depth().unwrap_or(0))?,
            geodesics: Vec::new(),
        }
    };
    Ok(scene.to_svg())
}
