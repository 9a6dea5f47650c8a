//! Figure assembly: choose tiles around the origin, approximate them and
//! turn them into a renderable plot specification.

use std::collections::BTreeSet;

use bonacci_core::field::{AlgNum, Ctx, FieldContext};
use bonacci_core::text::parse_algnum;
use bonacci_core::tiling::{tile_approx, TileApprox, TileMembership};

use crate::render::{CutSpec, PlotSpec, Projection, TileRender};
use crate::CliError;

#[derive(Debug, Clone)]
pub struct PlotOptions {
    pub d: u32,
    pub depth: u32,
    pub precision: u32,
    /// Embedding precision for cloud points (visualization only).
    pub embed_bits: u32,
    /// Coefficient bound of the lattice ball that selects which tiles to
    /// draw: every tile containing some Phi(z) with z in the ball.
    pub ball: u32,
    pub width: u32,
    pub height: u32,
    pub marker_size: f64,
    pub labels: bool,
    pub cut_through: Option<String>,
    pub axes: (usize, usize),
    pub thickness: Option<f64>,
    /// Lattice point to mark with a cross (drawn at its embedding).
    pub mark: Option<String>,
}

impl PlotOptions {
    pub fn new(d: u32, depth: u32, precision: u32) -> Self {
        PlotOptions {
            d,
            depth,
            precision,
            embed_bits: 96,
            ball: 2,
            width: 900,
            height: 700,
            marker_size: 1.6,
            labels: true,
            cut_through: None,
            axes: (0, 1),
            thickness: None,
            mark: None,
        }
    }
}

pub struct PlotData {
    pub ctx: Ctx,
    pub tiles: Vec<TileApprox>,
    pub spec: PlotSpec,
}

/// Every tile base reachable as a tile containing `Phi(z)` for a lattice
/// point `z` with coordinates in `[-ball, ball]`; guarantees all layers
/// appear around the origin.
pub fn collect_default_bases(ctx: &Ctx, ball: u32) -> Result<Vec<AlgNum>, CliError> {
    let membership = TileMembership::new(ctx)?;
    let d = ctx.degree();
    let b = ball as i64;
    let mut coeffs = vec![-b; d];
    let mut bases: BTreeSet<AlgNum> = BTreeSet::new();
    loop {
        let z = AlgNum::from_int_coeffs(ctx, &coeffs)?;
        for tile in membership.tiles_containing(&z)? {
            bases.insert(tile);
        }
        let mut i = 0;
        loop {
            if i == d {
                return Ok(bases.into_iter().collect());
            }
            coeffs[i] += 1;
            if coeffs[i] <= b {
                break;
            }
            coeffs[i] = -b;
            i += 1;
        }
    }
}

pub fn build_plot(opts: &PlotOptions) -> Result<PlotData, CliError> {
    let ctx = FieldContext::new(opts.d, opts.precision)?;
    let bases = collect_default_bases(&ctx, opts.ball)?;
    let tiles: Vec<TileApprox> = bases
        .iter()
        .map(|base| tile_approx(base, opts.depth, opts.embed_bits))
        .collect::<Result<_, _>>()?;

    let dim = (opts.d - 1) as usize;
    let renders: Vec<TileRender> = tiles
        .iter()
        .map(|t| TileRender {
            label: t.expansion.compact(),
            layer: t.layer.rep(),
            points: t.points.iter().map(|p| p.coords_f64()).collect(),
        })
        .collect();

    let projection = if dim == 2 {
        Projection::Direct
    } else if let Some(text) = &opts.cut_through {
        let anchor_point = parse_algnum(&ctx, text)?;
        let anchor = anchor_point.embed(opts.embed_bits).coords_f64();
        let thickness = opts.thickness.unwrap_or_else(|| {
            // 2% of the cloud bounding-box diagonal
            let mut lo = vec![f64::INFINITY; dim];
            let mut hi = vec![f64::NEG_INFINITY; dim];
            for t in &renders {
                for p in &t.points {
                    for k in 0..dim {
                        lo[k] = lo[k].min(p[k]);
                        hi[k] = hi[k].max(p[k]);
                    }
                }
            }
            let diag: f64 = (0..dim)
                .map(|k| (hi[k] - lo[k]).powi(2))
                .sum::<f64>()
                .sqrt();
            0.02 * diag
        });
        Projection::Slab(CutSpec {
            anchor,
            axes: opts.axes,
            thickness,
        })
    } else if opts.d >= 5 {
        Projection::Plane { axes: (0, 1) }
    } else {
        return Err(CliError::Usage(
            "plotting d = 4 requires --cut-through <point>".to_string(),
        ));
    };

    let mut marks = Vec::new();
    if let Some(text) = &opts.mark {
        let point = parse_algnum(&ctx, text)?;
        marks.push(point.embed(opts.embed_bits).coords_f64());
    }

    let spec = PlotSpec {
        dim,
        tiles: renders,
        marks,
        width: opts.width,
        height: opts.height,
        palette: crate::render::default_palette(opts.d.saturating_sub(1).max(1)),
        marker_size: opts.marker_size,
        projection,
        labels: opts.labels,
    };
    Ok(PlotData { ctx, tiles, spec })
}
