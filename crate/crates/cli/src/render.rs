//! Deterministic SVG emission of tile point clouds colored by layer.
//!
//! Identical plot specifications produce byte-identical documents: all
//! floating-point coordinates are formatted with fixed precision, marker
//! order follows the deterministic tile/point order, and colors come from
//! an evenly spaced hue palette starting at red.

use std::fmt::Write as _;

#[derive(Debug, Clone)]
pub struct TileRender {
    /// Label drawn next to the tile (the period word of its expansion).
    pub label: String,
    pub layer: u32,
    pub points: Vec<Vec<f64>>,
}

#[derive(Debug, Clone)]
pub struct CutSpec {
    /// Slab center in full embedding coordinates.
    pub anchor: Vec<f64>,
    /// The two coordinate indices kept by the projection.
    pub axes: (usize, usize),
    /// Half-thickness of the slab on every non-axis coordinate.
    pub thickness: f64,
}

/// How a (d-1)-dimensional cloud is reduced to the drawing plane.
#[derive(Debug, Clone)]
pub enum Projection {
    /// d = 3: the cloud is already planar.
    Direct,
    /// Keep points inside a slab around an anchor, project onto two axes.
    Slab(CutSpec),
    /// Forget all other coordinates (diagnostic view for d >= 5).
    Plane { axes: (usize, usize) },
}

#[derive(Debug, Clone)]
pub struct PlotSpec {
    /// Embedding dimension d-1.
    pub dim: usize,
    pub tiles: Vec<TileRender>,
    /// Reference points drawn as crosses (e.g. the embedded lattice point
    /// whose tile membership the figure illustrates).
    pub marks: Vec<Vec<f64>>,
    pub width: u32,
    pub height: u32,
    /// Fill color per layer, index `layer - 1`.
    pub palette: Vec<String>,
    pub marker_size: f64,
    pub projection: Projection,
    pub labels: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RenderError {
    #[error("empty plot: no tiles or no points survive the cut")]
    EmptyPlot,
    #[error("a cut or projection must be specified for d >= 4")]
    MissingCut,
    #[error("invalid projection axes")]
    BadAxes,
}

/// Hues evenly spaced over the circle starting at red, one per layer.
pub fn default_palette(layers: u32) -> Vec<String> {
    (0..layers.max(1))
        .map(|i| hsl_to_hex(360.0 * i as f64 / layers.max(1) as f64, 0.78, 0.46))
        .collect()
}

fn hsl_to_hex(h: f64, s: f64, l: f64) -> String {
    let c = (1.0 - (2.0 * l - 1.0).abs()) * s;
    let hp = h / 60.0;
    let x = c * (1.0 - (hp % 2.0 - 1.0).abs());
    let (r1, g1, b1) = match hp as u32 {
        0 => (c, x, 0.0),
        1 => (x, c, 0.0),
        2 => (0.0, c, x),
        3 => (0.0, x, c),
        4 => (x, 0.0, c),
        _ => (c, 0.0, x),
    };
    let m = l - c / 2.0;
    let to8 = |v: f64| ((v + m) * 255.0).round().clamp(0.0, 255.0) as u8;
    format!("#{:02x}{:02x}{:02x}", to8(r1), to8(g1), to8(b1))
}

fn project(spec: &PlotSpec, p: &[f64]) -> Result<Option<(f64, f64)>, RenderError> {
    match &spec.projection {
        Projection::Direct => {
            if spec.dim != 2 {
                return Err(RenderError::MissingCut);
            }
            Ok(Some((p[0], p[1])))
        }
        Projection::Slab(cut) => {
            let (i, j) = cut.axes;
            if i == j || i >= spec.dim || j >= spec.dim || cut.anchor.len() != spec.dim {
                return Err(RenderError::BadAxes);
            }
            for (k, v) in p.iter().enumerate().take(spec.dim) {
                if k != i && k != j && (v - cut.anchor[k]).abs() > cut.thickness {
                    return Ok(None);
                }
            }
            Ok(Some((p[i], p[j])))
        }
        Projection::Plane { axes: (i, j) } => {
            if i == j || *i >= spec.dim || *j >= spec.dim {
                return Err(RenderError::BadAxes);
            }
            Ok(Some((p[*i], p[*j])))
        }
    }
}

/// Render the plot to an SVG 1.1 document.
pub fn render_svg(spec: &PlotSpec) -> Result<String, RenderError> {
    if spec.tiles.is_empty() {
        return Err(RenderError::EmptyPlot);
    }
    if let Projection::Slab(cut) = &spec.projection {
        if cut.thickness <= 0.0 {
            return Err(RenderError::BadAxes);
        }
    }

    // Project all points, keeping per-tile grouping.
    let mut projected: Vec<Vec<(f64, f64)>> = Vec::with_capacity(spec.tiles.len());
    let mut count = 0usize;
    for tile in &spec.tiles {
        let mut pts = Vec::with_capacity(tile.points.len());
        for p in &tile.points {
            if let Some(q) = project(spec, p)? {
                pts.push(q);
            }
        }
        count += pts.len();
        projected.push(pts);
    }
    if count == 0 {
        return Err(RenderError::EmptyPlot);
    }

    // Data bounding box -> pixel transform (y flipped), uniform scale.
    let mut lo = (f64::INFINITY, f64::INFINITY);
    let mut hi = (f64::NEG_INFINITY, f64::NEG_INFINITY);
    for pts in &projected {
        for &(x, y) in pts {
            lo.0 = lo.0.min(x);
            lo.1 = lo.1.min(y);
            hi.0 = hi.0.max(x);
            hi.1 = hi.1.max(y);
        }
    }
    let margin = 0.05 * spec.width.min(spec.height) as f64;
    let span_x = (hi.0 - lo.0).max(1e-12);
    let span_y = (hi.1 - lo.1).max(1e-12);
    let scale = ((spec.width as f64 - 2.0 * margin) / span_x)
        .min((spec.height as f64 - 2.0 * margin) / span_y);
    let off_x = (spec.width as f64 - scale * span_x) / 2.0;
    let off_y = (spec.height as f64 - scale * span_y) / 2.0;
    let tx = |x: f64| off_x + scale * (x - lo.0);
    let ty = |y: f64| spec.height as f64 - off_y - scale * (y - lo.1);

    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#,
        w = spec.width,
        h = spec.height
    );
    let _ = writeln!(
        svg,
        r#"<rect width="{}" height="{}" fill="white"/>"#,
        spec.width, spec.height
    );
    for (tile, pts) in spec.tiles.iter().zip(&projected) {
        if pts.is_empty() {
            continue;
        }
        let color = spec
            .palette
            .get((tile.layer.max(1) - 1) as usize % spec.palette.len().max(1))
            .cloned()
            .unwrap_or_else(|| "#000000".to_string());
        let _ = writeln!(svg, r#"<g fill="{color}" fill-opacity="0.85">"#);
        for &(x, y) in pts {
            let _ = writeln!(
                svg,
                r#"<circle cx="{:.4}" cy="{:.4}" r="{:.4}"/>"#,
                tx(x),
                ty(y),
                spec.marker_size
            );
        }
        let _ = writeln!(svg, "</g>");
        if spec.labels {
            let cx = pts.iter().map(|p| p.0).sum::<f64>() / pts.len() as f64;
            let cy = pts.iter().map(|p| p.1).sum::<f64>() / pts.len() as f64;
            let _ = writeln!(
                svg,
                r#"<text x="{:.4}" y="{:.4}" font-size="11" fill="black" text-anchor="middle">{}</text>"#,
                tx(cx),
                ty(cy),
                tile.label
            );
        }
    }
    for mark in &spec.marks {
        if let Some((x, y)) = project(spec, mark)? {
            let (px, py) = (tx(x), ty(y));
            let r = 4.0 * spec.marker_size;
            let _ = writeln!(
                svg,
                r#"<path d="M {:.4} {:.4} L {:.4} {:.4} M {:.4} {:.4} L {:.4} {:.4}" stroke="black" stroke-width="1.5" fill="none"/>"#,
                px - r,
                py - r,
                px + r,
                py + r,
                px - r,
                py + r,
                px + r,
                py - r
            );
        }
    }
    if matches!(spec.projection, Projection::Plane { .. }) {
        let _ = writeln!(
            svg,
            r##"<text x="8" y="16" font-size="12" fill="#555555">diagnostic projection</text>"##
        );
    }
    svg.push_str("</svg>\n");
    Ok(svg)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tile(layer: u32, points: Vec<Vec<f64>>) -> TileRender {
        TileRender {
            label: format!("L{layer}"),
            layer,
            points,
        }
    }

    fn planar_spec(tiles: Vec<TileRender>) -> PlotSpec {
        PlotSpec {
            dim: 2,
            tiles,
            marks: vec![],
            width: 400,
            height: 300,
            palette: default_palette(2),
            marker_size: 1.5,
            projection: Projection::Direct,
            labels: true,
        }
    }

    #[test]
    fn renders_single_marker() {
        let svg = render_svg(&planar_spec(vec![tile(1, vec![vec![0.1, -0.2]])])).unwrap();
        assert_eq!(svg.matches("<circle").count(), 1);
        assert!(svg.starts_with("<svg"));
        assert!(svg.trim_end().ends_with("</svg>"));
    }

    #[test]
    fn byte_determinism() {
        let spec = planar_spec(vec![
            tile(1, vec![vec![0.0, 0.0], vec![1.0, 2.0]]),
            tile(2, vec![vec![-1.0, 0.5]]),
        ]);
        assert_eq!(render_svg(&spec).unwrap(), render_svg(&spec).unwrap());
    }

    #[test]
    fn distinct_layers_get_distinct_colors() {
        let p = default_palette(4);
        let set: std::collections::BTreeSet<&String> = p.iter().collect();
        assert_eq!(set.len(), 4);
        assert_eq!(p[0], "#d11a1a"); // red start
    }

    #[test]
    fn empty_inputs_error() {
        assert_eq!(
            render_svg(&planar_spec(vec![])),
            Err(RenderError::EmptyPlot)
        );
    }

    #[test]
    fn slab_filters_and_is_monotone_in_thickness() {
        let mk = |thickness: f64| PlotSpec {
            dim: 3,
            tiles: vec![tile(
                1,
                vec![
                    vec![0.0, 0.0, 0.0],
                    vec![1.0, 1.0, 0.3],
                    vec![2.0, 0.5, 0.9],
                ],
            )],
            marks: vec![],
            width: 200,
            height: 200,
            palette: default_palette(3),
            marker_size: 1.0,
            projection: Projection::Slab(CutSpec {
                anchor: vec![0.0, 0.0, 0.0],
                axes: (0, 1),
                thickness,
            }),
            labels: false,
        };
        let thin = render_svg(&mk(0.1)).unwrap().matches("<circle").count();
        let mid = render_svg(&mk(0.5)).unwrap().matches("<circle").count();
        let fat = render_svg(&mk(1.0)).unwrap().matches("<circle").count();
        assert!(thin <= mid && mid <= fat);
        assert_eq!((thin, fat), (1, 3));
    }

    #[test]
    fn missing_cut_for_3d_cloud() {
        let mut spec = planar_spec(vec![tile(1, vec![vec![0.0, 0.0, 0.0]])]);
        spec.dim = 3;
        assert_eq!(render_svg(&spec), Err(RenderError::MissingCut));
    }
}
