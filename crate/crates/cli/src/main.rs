//! `bonacci`: symmetric d-Bonacci beta-expansions, Rauzy-fractal tiles
//! and desk-scale multiple-tiling verification.

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use bonacci_cli::json::{export_json, ExpansionDto};
use bonacci_cli::plot::{build_plot, PlotOptions};
use bonacci_cli::render::render_svg;
use bonacci_cli::verify::{self, Suite, VerifyOptions};
use bonacci_cli::{precision_from_env, CliError};
use bonacci_core::dynamics::{TransformKind, TransformSpec};
use bonacci_core::field::{AlgNum, Ctx, FieldContext};
use bonacci_core::text::parse_algnum;
use bonacci_core::tiling::{layer_of, TileMembership};

#[derive(Parser)]
#[command(
    name = "bonacci",
    version,
    about = "Symmetric d-Bonacci beta-expansions, Rauzy tiles and multiple-tiling checks"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum KindArg {
    Sym,
    Bal,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FormatArg {
    Text,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum PlotFormatArg {
    Svg,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SuiteArg {
    Periodic,
    Conjugacy,
    Measure,
    Degree,
    PaperExamples,
    All,
}

#[derive(Subcommand)]
enum Cmd {
    /// Expand a point under the symmetric or balanced transformation.
    Expand {
        #[arg(long)]
        d: u32,
        /// Point in the element grammar, e.g. "b^-2 + b^-3".
        #[arg(long, conflicts_with = "digits")]
        x: Option<String>,
        /// Digit literal p1 p2 ... over {0,1}: the point sum p_i beta^-i.
        #[arg(long)]
        digits: Option<String>,
        /// Negate the digit-literal point.
        #[arg(long, requires = "digits")]
        neg: bool,
        #[arg(long, value_enum, default_value_t = KindArg::Sym)]
        kind: KindArg,
        /// Also print the first n digits.
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        precision: Option<u32>,
        #[arg(long, value_enum, default_value_t = FormatArg::Text)]
        format: FormatArg,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// List the purely periodic points of the symmetric transformation.
    Periodic {
        #[arg(long)]
        d: u32,
        #[arg(long)]
        precision: Option<u32>,
        #[arg(long, value_enum, default_value_t = FormatArg::Json)]
        format: FormatArg,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// The tiles whose Rauzy fractals contain the embedded lattice point.
    TilesAt {
        #[arg(long)]
        d: u32,
        /// Lattice point in the element grammar, e.g. "1 + b^3".
        #[arg(long)]
        z: String,
        #[arg(long)]
        precision: Option<u32>,
        #[arg(long, value_enum, default_value_t = FormatArg::Json)]
        format: FormatArg,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Run exact verification suites; exit 1 if any check fails.
    Verify {
        /// Degree or inclusive range, e.g. "3" or "3..5".
        #[arg(long)]
        d: Option<String>,
        #[arg(long, value_enum, default_value_t = SuiteArg::All)]
        suite: SuiteArg,
        #[arg(long, default_value_t = 200)]
        samples: u32,
        #[arg(long, default_value_t = 3)]
        coeff_bound: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        precision: Option<u32>,
        #[arg(long, value_enum, default_value_t = FormatArg::Text)]
        format: FormatArg,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Render the tiles around the origin as an SVG figure.
    Plot {
        #[arg(long)]
        d: u32,
        #[arg(long, default_value_t = 14)]
        depth: u32,
        /// Anchor the cut slab at this lattice point (required for d = 4).
        #[arg(long)]
        cut_through: Option<String>,
        /// Projection axes as "i,j".
        #[arg(long, default_value = "0,1")]
        axes: String,
        /// Slab half-thickness; default 2% of the cloud bounding box.
        #[arg(long)]
        thickness: Option<f64>,
        /// Draw a cross at this lattice point's embedding.
        #[arg(long)]
        mark: Option<String>,
        /// Coefficient bound of the lattice ball selecting tiles to draw.
        #[arg(long, default_value_t = 2)]
        ball: u32,
        /// Embedding precision of plotted points.
        #[arg(long, default_value_t = 96)]
        embed_bits: u32,
        #[arg(long, default_value_t = 900)]
        width: u32,
        #[arg(long, default_value_t = 700)]
        height: u32,
        #[arg(long, default_value_t = 1.6)]
        marker_size: f64,
        #[arg(long)]
        no_labels: bool,
        #[arg(long)]
        precision: Option<u32>,
        #[arg(long, value_enum, default_value_t = PlotFormatArg::Svg)]
        format: PlotFormatArg,
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn emit(output: &Option<PathBuf>, content: &str) -> Result<(), CliError> {
    match output {
        Some(path) => std::fs::write(path, content)?,
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(content.as_bytes())?;
        }
    }
    Ok(())
}

#[derive(Serialize)]
struct ExpandOut {
    d: u32,
    kind: &'static str,
    x: String,
    preperiod: Vec<i8>,
    period: Vec<i8>,
    purely_periodic: bool,
    compact: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    digits: Option<Vec<i8>>,
}

#[derive(Serialize)]
struct PeriodicEntry {
    point: String,
    expansion: ExpansionDto,
    layer: u32,
}

#[derive(Serialize)]
struct PeriodicOut {
    d: u32,
    count: usize,
    points: Vec<PeriodicEntry>,
}

#[derive(Serialize)]
struct TilesAtOut {
    d: u32,
    z: String,
    k: u32,
    tiles: Vec<PeriodicEntry>,
}

fn parse_digit_literal(ctx: &Ctx, digits: &str, neg: bool) -> Result<AlgNum, CliError> {
    let mut x = AlgNum::zero(ctx);
    for (i, ch) in digits.chars().enumerate() {
        match ch {
            '0' => {}
            '1' => x = &x + &AlgNum::beta_pow(ctx, -(i as i64 + 1)),
            _ => {
                return Err(CliError::Usage(format!(
                    "digit literal must use only 0 and 1, found {ch:?}"
                )))
            }
        }
    }
    Ok(if neg { -&x } else { x })
}

fn run(cli: Cli) -> Result<ExitCode, CliError> {
    match cli.cmd {
        Cmd::Expand {
            d,
            x,
            digits,
            neg,
            kind,
            n,
            precision,
            format,
            output,
        } => {
            let ctx = FieldContext::new(d, precision_from_env(precision))?;
            let point = match (&x, &digits) {
                (Some(text), _) => parse_algnum(&ctx, text)?,
                (None, Some(lit)) => parse_digit_literal(&ctx, lit, neg)?,
                (None, None) => return Err(CliError::Usage("expand needs --x or --digits".into())),
            };
            let spec = match kind {
                KindArg::Sym => TransformSpec::symmetric(&ctx),
                KindArg::Bal => TransformSpec::balanced(&ctx),
            };
            let cycle = spec.orbit_cycle(&point)?;
            let digits_out = match n {
                Some(n) => Some(spec.expansion(&point, n)?),
                None => None,
            };
            let out = ExpandOut {
                d,
                kind: match spec.kind() {
                    TransformKind::Symmetric => "symmetric",
                    TransformKind::Balanced => "balanced",
                },
                x: point.to_string(),
                preperiod: cycle.expansion.preperiod().to_vec(),
                period: cycle.expansion.period().to_vec(),
                purely_periodic: cycle.preperiod_len == 0,
                compact: cycle.expansion.compact(),
                digits: digits_out,
            };
            let text = match format {
                FormatArg::Json => format!("{}\n", serde_json::to_string(&out).unwrap()),
                FormatArg::Text => {
                    let mut s = format!(
                        "x = {}\nkind = {}\npreperiod = {:?}\nperiod = {:?}\ncompact = {}\n",
                        out.x, out.kind, out.preperiod, out.period, out.compact
                    );
                    if let Some(dg) = &out.digits {
                        s.push_str(&format!("digits = {dg:?}\n"));
                    }
                    s
                }
            };
            emit(&output, &text)?;
            Ok(ExitCode::SUCCESS)
        }

        Cmd::Periodic {
            d,
            precision,
            format,
            output,
        } => {
            let ctx = FieldContext::new(d, precision_from_env(precision))?;
            let sym = TransformSpec::symmetric(&ctx);
            let points = bonacci_core::dynamics::periodic_points(&ctx)?;
            let mut entries = Vec::with_capacity(points.len());
            for p in &points {
                entries.push(PeriodicEntry {
                    point: p.to_string(),
                    expansion: ExpansionDto::from(&sym.orbit_cycle(p)?.expansion),
                    layer: layer_of(p)?.rep(),
                });
            }
            let out = PeriodicOut {
                d,
                count: entries.len(),
                points: entries,
            };
            let text = match format {
                FormatArg::Json => format!("{}\n", serde_json::to_string(&out).unwrap()),
                FormatArg::Text => {
                    let mut s = format!("d = {}, {} purely periodic points\n", d, out.count);
                    for e in &out.points {
                        s.push_str(&format!(
                            "period {:?} layer {} point {}\n",
                            e.expansion.period, e.layer, e.point
                        ));
                    }
                    s
                }
            };
            emit(&output, &text)?;
            Ok(ExitCode::SUCCESS)
        }

        Cmd::TilesAt {
            d,
            z,
            precision,
            format,
            output,
        } => {
            let ctx = FieldContext::new(d, precision_from_env(precision))?;
            let sym = TransformSpec::symmetric(&ctx);
            let zz = parse_algnum(&ctx, &z)?;
            let membership = TileMembership::new(&ctx)?;
            let k = if zz.sign() >= 0 {
                membership.find_prefix_k(&zz)?
            } else {
                membership.find_prefix_k(&-&zz)?
            };
            let tiles = membership.tiles_containing(&zz)?;
            let mut entries = Vec::with_capacity(tiles.len());
            for t in &tiles {
                entries.push(PeriodicEntry {
                    point: t.to_string(),
                    expansion: ExpansionDto::from(&sym.orbit_cycle(t)?.expansion),
                    layer: layer_of(t)?.rep(),
                });
            }
            let out = TilesAtOut {
                d,
                z: zz.to_string(),
                k,
                tiles: entries,
            };
            let text = match format {
                FormatArg::Json => format!("{}\n", serde_json::to_string(&out).unwrap()),
                FormatArg::Text => {
                    let mut s = format!(
                        "d = {}, z = {}, k = {}, {} tiles\n",
                        d,
                        out.z,
                        out.k,
                        out.tiles.len()
                    );
                    for e in &out.tiles {
                        s.push_str(&format!(
                            "tile {} layer {} period {:?}\n",
                            e.point, e.layer, e.expansion.period
                        ));
                    }
                    s
                }
            };
            emit(&output, &text)?;
            Ok(ExitCode::SUCCESS)
        }

        Cmd::Verify {
            d,
            suite,
            samples,
            coeff_bound,
            seed,
            precision,
            format,
            output,
        } => {
            let d_range = match d {
                Some(s) => Some(parse_range(&s)?),
                None => None,
            };
            let opts = VerifyOptions {
                d_range,
                samples,
                coeff_bound,
                seed,
                precision: precision_from_env(precision),
            };
            let suites: Vec<Suite> = match suite {
                SuiteArg::Periodic => vec![Suite::Periodic],
                SuiteArg::Conjugacy => vec![Suite::Conjugacy],
                SuiteArg::Measure => vec![Suite::Measure],
                SuiteArg::Degree => vec![Suite::Degree],
                SuiteArg::PaperExamples => vec![Suite::PaperExamples],
                SuiteArg::All => Suite::ALL.to_vec(),
            };
            let report = verify::run(&suites, &opts)?;
            let text = match format {
                FormatArg::Json => format!("{}\n", serde_json::to_string(&report).unwrap()),
                FormatArg::Text => report.text(),
            };
            emit(&output, &text)?;
            Ok(if report.passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }

        Cmd::Plot {
            d,
            depth,
            cut_through,
            axes,
            thickness,
            mark,
            ball,
            embed_bits,
            width,
            height,
            marker_size,
            no_labels,
            precision,
            format,
            output,
        } => {
            let mut opts = PlotOptions::new(d, depth, precision_from_env(precision));
            opts.cut_through = cut_through;
            opts.axes = parse_axes(&axes)?;
            opts.thickness = thickness;
            opts.mark = mark;
            opts.ball = ball;
            opts.embed_bits = embed_bits;
            opts.width = width;
            opts.height = height;
            opts.marker_size = marker_size;
            opts.labels = !no_labels;
            let data = build_plot(&opts)?;
            let text = match format {
                PlotFormatArg::Svg => render_svg(&data.spec)?,
                PlotFormatArg::Json => {
                    format!("{}\n", export_json(d, depth, embed_bits, &data.tiles))
                }
            };
            emit(&output, &text)?;
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn parse_range(s: &str) -> Result<(u32, u32), CliError> {
    let bad = || CliError::Usage(format!("bad degree range {s:?}; use \"3\" or \"3..5\""));
    if let Some((a, b)) = s.split_once("..") {
        let lo: u32 = a.trim().parse().map_err(|_| bad())?;
        let hi: u32 = b
            .trim()
            .trim_start_matches('=')
            .parse()
            .map_err(|_| bad())?;
        if lo < 2 || hi < lo {
            return Err(CliError::Usage(format!(
                "degree range {s:?} must satisfy 2 <= lo <= hi"
            )));
        }
        Ok((lo, hi))
    } else {
        let v: u32 = s.trim().parse().map_err(|_| bad())?;
        if v < 2 {
            return Err(CliError::Usage("degree must be at least 2".into()));
        }
        Ok((v, v))
    }
}

fn parse_axes(s: &str) -> Result<(usize, usize), CliError> {
    let bad = || CliError::Usage(format!("bad axes {s:?}; use \"i,j\""));
    let (a, b) = s.split_once(',').ok_or_else(bad)?;
    let i = a.trim().parse().map_err(|_| bad())?;
    let j = b.trim().parse().map_err(|_| bad())?;
    if i == j {
        return Err(bad());
    }
    Ok((i, j))
}
