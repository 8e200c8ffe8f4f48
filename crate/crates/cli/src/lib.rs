//! The `pcayley` command line: build, classify, embed, render and verify.

pub mod error;
pub mod render;
pub mod verify;

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use planar_cayley::classify::{blind_radius, classify_ball, classify_presentation, Classification};
use planar_cayley::construct::{
    certify_ball, construct, enumerated_ball, CayleyBall, GraphType, TypeParams, DEFAULT_CAP,
};
use planar_cayley::embed::{embed, embed_with_pattern, spin_table, ColourSpin, RotationEmbedding, SpinPattern};
use planar_cayley::Presentation;
use serde::Serialize;

pub use error::CliError;
use render::{default_palette, dot, svg, Layout, RenderSpec};
use verify::{run_check, run_grid, Check, CheckReport, Grid};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Dot,
    Svg,
}

#[derive(Debug, Parser)]
#[command(name = "pcayley", version, about = "Planar cubic Cayley graphs of connectivity 2")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Ball radius (defaults depend on the command).
    #[arg(long, global = true)]
    pub radius: Option<usize>,
    /// Coset limit for enumeration.
    #[arg(long, global = true, default_value_t = DEFAULT_CAP)]
    pub cap: usize,
    /// Seed for layout choices; output is a function of the flags and the seed.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Output file (a directory for `verify --grid`); stdout when absent.
    #[arg(short = 'o', long = "output", global = true)]
    pub output: Option<PathBuf>,
}

/// A ball given by family parameters or a presentation.
#[derive(Debug, Args, Default, Clone)]
pub struct Source {
    /// Presentation string like "<a,b | b^2, (ab)^3>", or a ball JSON file.
    pub input: Option<String>,
    #[arg(long = "type", value_parser = parse_type)]
    pub kind: Option<GraphType>,
    #[arg(long)]
    pub n: Option<u32>,
    #[arg(long)]
    pub m: Option<u32>,
    #[arg(long)]
    pub presentation: Option<String>,
}

fn parse_type(s: &str) -> Result<GraphType, String> {
    s.parse::<GraphType>().map_err(|e| e.to_string())
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build a certified ball and write it as JSON.
    Build(Source),
    /// Classify a presentation or a ball.
    Classify {
        #[command(flatten)]
        source: Source,
        /// Decide from the ball's structure alone.
        #[arg(long)]
        blind: bool,
    },
    /// Spin embedding of a ball.
    Embed(Source),
    /// Draw the embedding around the center.
    Render {
        #[command(flatten)]
        source: Source,
        #[arg(long, default_value_t = 3)]
        depth: usize,
        #[arg(long, value_enum, default_value_t = Layout::Auto)]
        layout: Layout,
    },
    /// Run verification checks; exit 0 iff all pass.
    Verify {
        #[command(flatten)]
        source: Source,
        #[arg(long, value_enum)]
        grid: Option<Grid>,
        #[arg(long, value_enum)]
        check: Vec<Check>,
    },
}

enum Input {
    Family(TypeParams),
    Presentation(Presentation),
    Ball(Box<CayleyBall>),
}

impl Source {
    fn resolve(&self) -> Result<Option<Input>, CliError> {
        let given = [self.input.is_some(), self.kind.is_some(), self.presentation.is_some()];
        if given.iter().filter(|&&g| g).count() > 1 {
            return Err(CliError::InvalidParams("give one of an input, --type or --presentation".into()));
        }
        if let Some(kind) = self.kind {
            return Ok(Some(Input::Family(TypeParams::new(kind, self.n, self.m)?)));
        }
        if self.n.is_some() || self.m.is_some() {
            return Err(CliError::InvalidParams("--n and --m need --type".into()));
        }
        if let Some(p) = &self.presentation {
            return Ok(Some(Input::Presentation(Presentation::parse(p)?)));
        }
        let Some(input) = &self.input else { return Ok(None) };
        let path = Path::new(input);
        if path.is_file() {
            let text = fs::read_to_string(path)?;
            return Ok(Some(Input::Ball(Box::new(CayleyBall::from_json_str(&text)?))));
        }
        if input.trim_start().starts_with('<') {
            return Ok(Some(Input::Presentation(Presentation::parse(input)?)));
        }
        Err(CliError::Parse(format!("`{input}` is neither a file nor a presentation")))
    }
}

fn required(source: &Source) -> Result<Input, CliError> {
    source
        .resolve()?
        .ok_or_else(|| CliError::InvalidParams("no input: give a presentation, a ball file or --type".into()))
}

fn ball_of(input: Input, radius: usize, cap: usize) -> Result<CayleyBall, CliError> {
    Ok(match input {
        Input::Family(t) => construct(&t, radius)?,
        Input::Presentation(p) => enumerated_ball(&p, radius, cap)?,
        Input::Ball(b) => *b,
    })
}

/// Spin embedding of any ball whose presentation is in the catalogue, up to renaming.
pub fn embedding_for(b: &CayleyBall) -> Result<RotationEmbedding<'_>, CliError> {
    let c = classify_presentation(b.presentation())?;
    let Classification::Catalogue(report) = c else {
        return Err(CliError::NotInCatalogue(format!("{} matches no family", b.presentation())));
    };
    if report.renaming.is_identity() {
        return Ok(embed(b, &report.params)?);
    }
    // The family's colour spins, carried back to the input generator names.
    let alphabet = b.presentation().alphabet();
    let family_of = |g: usize| {
        let name = &b.presentation().generators()[g].name;
        report.renaming.names.iter().find(|(from, _)| from == name).map(|(_, to)| to.clone()).expect("renamed")
    };
    let k = b.presentation().generators().len();
    match spin_table(&report.params) {
        SpinPattern::Fixed(table) => {
            let pattern: Vec<ColourSpin> = (0..k)
                .map(|g| table.iter().find(|(n, _)| *n == family_of(g)).map(|(_, s)| *s).expect("table covers colours"))
                .collect();
            debug_assert!(alphabet.generators().len() == k);
            Ok(embed_with_pattern(b, &pattern)?)
        }
        SpinPattern::AnyPlanar => {
            let mut last = None;
            for mask in 0..(1u32 << k) {
                let pattern: Vec<ColourSpin> = (0..k)
                    .map(|g| if mask >> g & 1 == 1 { ColourSpin::Reversing } else { ColourSpin::Preserving })
                    .collect();
                match embed_with_pattern(b, &pattern) {
                    Ok(e) => return Ok(e),
                    Err(e) => last = Some(e),
                }
            }
            Err(last.expect("some pattern was tried").into())
        }
    }
}

fn json<T: Serialize>(value: &T) -> Result<String, CliError> {
    Ok(serde_json::to_string_pretty(value)? + "\n")
}

/// Writes `text` to `-o` if given, otherwise to `out`.
fn emit(cli: &Cli, out: &mut dyn Write, text: &str) -> Result<(), CliError> {
    match &cli.output {
        Some(path) => fs::write(path, text)?,
        None => out.write_all(text.as_bytes())?,
    }
    Ok(())
}

fn draw(cli: &Cli, b: &CayleyBall, format: Format, depth: usize, layout: Layout) -> Result<String, CliError> {
    match format {
        Format::Dot => Ok(dot(b, Some(depth), &default_palette())),
        Format::Svg => {
            let e = match embedding_for(b) {
                Ok(e) => e,
                // Outside the catalogue the drawing uses the column order at every vertex.
                Err(CliError::NotInCatalogue(_)) => RotationEmbedding::from_spins(b, vec![true; b.len()]),
                Err(e) => return Err(e),
            };
            svg(&e, &RenderSpec::new(layout, depth, cli.seed))
        }
        Format::Json => Err(CliError::InvalidParams("drawing needs --format dot or svg".into())),
    }
}

#[derive(Serialize)]
struct NotInCatalogueJson<'a> {
    not_in_catalogue: &'a planar_cayley::classify::CatalogueHint,
}

/// Runs one command, writing results to `out` (or `-o`). The error carries the exit code.
pub fn run(cli: &Cli, out: &mut dyn Write) -> Result<(), CliError> {
    match &cli.command {
        Command::Build(source) => {
            let input = required(source)?;
            let radius = cli.radius.unwrap_or(4);
            let b = ball_of(input, radius, cli.cap)?;
            let cert = certify_ball(&b, b.presentation())
                .map_err(|v| CliError::Verification(format!("{} violations, first: {}", v.len(), v[0])))?;
            let text = match cli.format.unwrap_or(Format::Json) {
                Format::Json => b.to_json_string() + "\n",
                f => draw(cli, &b, f, b.radius().min(3), Layout::Auto)?,
            };
            emit(cli, out, &text)?;
            if let Some(path) = &cli.output {
                writeln!(
                    out,
                    "wrote {}: {} vertices, {} edges, {} interior, radius {}{}; {} relator traces closed",
                    path.display(),
                    cert.vertices,
                    cert.edges,
                    cert.interior,
                    b.radius(),
                    if cert.complete { " (whole graph)" } else { "" },
                    cert.traces_closed
                )?;
            }
            Ok(())
        }
        Command::Classify { source, blind } => {
            let input = required(source)?;
            let result = match (input, blind) {
                (Input::Presentation(p), false) => classify_presentation(&p)?,
                (Input::Family(t), false) => classify_presentation(&t.presentation())?,
                (Input::Ball(b), false) => classify_presentation(b.presentation())?,
                (input, true) => {
                    let b = match input {
                        Input::Ball(b) => *b,
                        Input::Family(t) => construct(&t, cli.radius.unwrap_or(blind_radius(&t.presentation())))?,
                        Input::Presentation(p) => {
                            let r = cli.radius.unwrap_or(blind_radius(&p));
                            enumerated_ball(&p, r, cli.cap)?
                        }
                    };
                    classify_ball(&b)?
                }
            };
            match result {
                Classification::Catalogue(r) => emit(cli, out, &json(&r.to_json())?),
                Classification::NotInCatalogue(hint) => {
                    emit(cli, out, &json(&NotInCatalogueJson { not_in_catalogue: &hint })?)?;
                    Err(CliError::NotInCatalogue(hint.reason.clone()))
                }
            }
        }
        Command::Embed(source) => {
            let b = ball_of(required(source)?, cli.radius.unwrap_or(4), cli.cap)?;
            let text = match cli.format.unwrap_or(Format::Json) {
                Format::Json => json(&embedding_for(&b)?.to_json())?,
                f => draw(cli, &b, f, b.radius().min(3), Layout::Auto)?,
            };
            emit(cli, out, &text)
        }
        Command::Render { source, depth, layout } => {
            let input = required(source)?;
            // Extra layers so every drawn vertex has its full rotation and every short
            // cycle through it closes inside the ball.
            let b = ball_of(input, cli.radius.unwrap_or(depth + 3), cli.cap)?;
            let text = draw(cli, &b, cli.format.unwrap_or(Format::Svg), *depth, *layout)?;
            emit(cli, out, &text)
        }
        Command::Verify { source, grid, check } => {
            if let Some(grid) = grid {
                let report = run_grid(*grid, cli.cap, cli.output.is_some());
                let text = json(&report)?;
                match &cli.output {
                    Some(dir) => {
                        fs::create_dir_all(dir)?;
                        fs::write(dir.join("smoke.json"), &text)?;
                        for c in &report.cells {
                            if let Some(s) = &c.svg {
                                fs::write(dir.join(format!("{}.svg", verify::cell_slug(&c.params))), s)?;
                            }
                        }
                        writeln!(out, "wrote {} cells to {}", report.cells.len(), dir.display())?;
                    }
                    None => out.write_all(text.as_bytes())?,
                }
                return match report.first_failure() {
                    None => Ok(()),
                    Some((cell, r)) => Err(CliError::Verification(format!("{cell}: {} ({})", r.name, r.detail))),
                };
            }
            if check.is_empty() {
                return Err(CliError::InvalidParams("give --grid or at least one --check".into()));
            }
            let ball = match source.resolve()? {
                Some(input) => Some(ball_of(input, cli.radius.unwrap_or(6), cli.cap)?),
                None => None,
            };
            let results = check.iter().map(|&c| run_check(c, ball.as_ref())).collect::<Result<Vec<_>, _>>()?;
            let report = CheckReport { pass: results.iter().all(|r| r.pass), checks: results };
            emit(cli, out, &json(&report)?)?;
            match report.checks.iter().find(|r| !r.pass) {
                None => Ok(()),
                Some(r) => Err(CliError::Verification(format!("{} ({})", r.name, r.detail))),
            }
        }
    }
}
