//! Marching-squares extraction of `f(x, y) = level` as polylines.
//!
//! Grid values are evaluated row by row (in parallel when enabled); segment
//! emission and polyline assembly are sequential, so the output is identical
//! for every execution strategy.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::field::{BiPoly, Fields};
use crate::pauli::PauliPoly;
use crate::poly::cauchy_bound;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BBox {
    pub xmin: f64,
    pub xmax: f64,
    pub ymin: f64,
    pub ymax: f64,
}

impl BBox {
    pub fn new(xmin: f64, xmax: f64, ymin: f64, ymax: f64) -> Self {
        BBox {
            xmin,
            xmax,
            ymin,
            ymax,
        }
    }

    pub fn square(half_width: f64) -> Self {
        Self::new(-half_width, half_width, -half_width, half_width)
    }

    fn validate(&self) -> Result<()> {
        let ok = [self.xmin, self.xmax, self.ymin, self.ymax]
            .iter()
            .all(|v| v.is_finite())
            && self.xmax > self.xmin
            && self.ymax > self.ymin;
        if ok {
            Ok(())
        } else {
            Err(Error::DegenerateBox)
        }
    }

    pub fn width(&self) -> f64 {
        self.xmax - self.xmin
    }

    pub fn height(&self) -> f64 {
        self.ymax - self.ymin
    }
}

/// Default window for level `k`: a square of half-width `cauchy_bound(g − k)`
/// clipped to `[1.5, 4]`.
pub fn default_bbox(p: &PauliPoly, k: f64) -> BBox {
    let half = cauchy_bound(&p.g_poly().sub_level(k)).unwrap_or(2.0);
    BBox::square(half.clamp(1.5, 4.0))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FieldKind {
    S,
    H,
    H0I,
    DetRe,
    DetIm,
}

impl FieldKind {
    pub fn as_str(self) -> &'static str {
        match self {
            FieldKind::S => "S",
            FieldKind::H => "H",
            FieldKind::H0I => "H0I",
            FieldKind::DetRe => "DetRe",
            FieldKind::DetIm => "DetIm",
        }
    }

    pub fn select(self, fields: &Fields) -> &BiPoly {
        match self {
            FieldKind::S => &fields.s,
            FieldKind::H => &fields.h,
            FieldKind::H0I => &fields.h0_im,
            FieldKind::DetRe => &fields.det_re,
            FieldKind::DetIm => &fields.det_im,
        }
    }
}

pub type Polyline = Vec<(f64, f64)>;

type Segment = ((f64, f64), (f64, f64));

#[derive(Debug, Clone, PartialEq)]
pub struct ContourSet {
    pub level: f64,
    /// Which field was traced; `None` for an arbitrary polynomial.
    pub field: Option<FieldKind>,
    pub polylines: Vec<Polyline>,
    pub bbox: BBox,
    pub resolution: usize,
}

impl ContourSet {
    pub fn cell_width(&self) -> f64 {
        self.bbox.width() / self.resolution as f64
    }

    pub fn cell_height(&self) -> f64 {
        self.bbox.height() / self.resolution as f64
    }

    pub fn segment_count(&self) -> usize {
        self.polylines
            .iter()
            .map(|p| p.len().saturating_sub(1))
            .sum()
    }
}

/// Grid edge: horizontal from `(i, j)` to `(i+1, j)` or vertical from `(i, j)`
/// to `(i, j+1)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
enum Edge {
    H(usize, usize),
    V(usize, usize),
}

struct Grid<'a> {
    f: &'a BiPoly,
    level: f64,
    bbox: BBox,
    n: usize,
    dx: f64,
    dy: f64,
    /// Row-major `(n+1) × (n+1)` values of `f − level`.
    values: Vec<f64>,
}

impl Grid<'_> {
    fn x(&self, i: usize) -> f64 {
        if i == self.n {
            self.bbox.xmax
        } else {
            self.bbox.xmin + self.dx * i as f64
        }
    }

    fn y(&self, j: usize) -> f64 {
        if j == self.n {
            self.bbox.ymax
        } else {
            self.bbox.ymin + self.dy * j as f64
        }
    }

    fn v(&self, i: usize, j: usize) -> f64 {
        self.values[j * (self.n + 1) + i]
    }

    fn crossing(&self, e: Edge) -> (f64, f64) {
        let ((i0, j0), (i1, j1)) = match e {
            Edge::H(i, j) => ((i, j), (i + 1, j)),
            Edge::V(i, j) => ((i, j), (i, j + 1)),
        };
        let (v0, v1) = (self.v(i0, j0), self.v(i1, j1));
        let t = if v0 == v1 { 0.5 } else { v0 / (v0 - v1) };
        let (x0, y0, x1, y1) = (self.x(i0), self.y(j0), self.x(i1), self.y(j1));
        (x0 + t * (x1 - x0), y0 + t * (y1 - y0))
    }

    fn cell_segments(&self, i: usize, j: usize, out: &mut Vec<(Edge, Edge)>) {
        let corners = [
            self.v(i, j),
            self.v(i + 1, j),
            self.v(i + 1, j + 1),
            self.v(i, j + 1),
        ];
        let inside = corners.map(|v| v >= 0.0);
        let bottom = Edge::H(i, j);
        let right = Edge::V(i + 1, j);
        let top = Edge::H(i, j + 1);
        let left = Edge::V(i, j);
        // Edges adjacent to each corner: bl, br, tr, tl.
        let around = [(left, bottom), (bottom, right), (right, top), (top, left)];
        let sides = [(bottom, 0, 1), (right, 1, 2), (top, 2, 3), (left, 3, 0)];

        let crossed: Vec<Edge> = sides
            .iter()
            .filter(|&&(_, a, b)| inside[a] != inside[b])
            .map(|&(e, _, _)| e)
            .collect();
        match crossed.len() {
            0 => {}
            2 => out.push((crossed[0], crossed[1])),
            4 => {
                // Saddle: corners sharing the centre's sign are joined through
                // the cell; the other two are cut off.
                let cx = 0.5 * (self.x(i) + self.x(i + 1));
                let cy = 0.5 * (self.y(j) + self.y(j + 1));
                let centre_inside = self.f.eval(cx, cy) - self.level >= 0.0;
                for (corner, &(a, b)) in around.iter().enumerate() {
                    if inside[corner] != centre_inside {
                        out.push((a, b));
                    }
                }
            }
            _ => unreachable!("a square has an even number of sign changes"),
        }
    }
}

/// Trace `f = level` over `bbox` on a `resolution × resolution` cell grid.
pub fn marching_squares(
    f: &BiPoly,
    level: f64,
    bbox: BBox,
    resolution: usize,
) -> Result<ContourSet> {
    marching_squares_with(f, level, bbox, resolution, Execution::default())
}

pub fn marching_squares_with(
    f: &BiPoly,
    level: f64,
    bbox: BBox,
    resolution: usize,
    exec: Execution,
) -> Result<ContourSet> {
    bbox.validate()?;
    if resolution < 8 {
        return Err(Error::InvalidArgument(format!(
            "resolution must be at least 8, got {resolution}"
        )));
    }
    if !level.is_finite() {
        return Err(Error::InvalidArgument("level must be finite".into()));
    }
    let n = resolution;
    let mut grid = Grid {
        f,
        level,
        bbox,
        n,
        dx: bbox.width() / n as f64,
        dy: bbox.height() / n as f64,
        values: Vec::new(),
    };
    let rows = exec.map_range(n + 1, |j| {
        let y = grid.y(j);
        (0..=n)
            .map(|i| f.eval(grid.x(i), y) - level)
            .collect::<Vec<f64>>()
    });
    grid.values = rows.into_iter().flatten().collect();

    let mut segments = Vec::new();
    for j in 0..n {
        for i in 0..n {
            grid.cell_segments(i, j, &mut segments);
        }
    }
    let polylines = assemble(&grid, &segments);
    Ok(ContourSet {
        level,
        field: None,
        polylines,
        bbox,
        resolution,
    })
}

/// Contour of one of the named fields of a matrix polynomial.
pub fn contour_field(
    fields: &Fields,
    kind: FieldKind,
    level: f64,
    bbox: BBox,
    resolution: usize,
    exec: Execution,
) -> Result<ContourSet> {
    let mut set = marching_squares_with(kind.select(fields), level, bbox, resolution, exec)?;
    set.field = Some(kind);
    Ok(set)
}

/// Chain segments sharing grid edges into polylines. Open chains start at an
/// edge used once; the remaining segments form closed loops.
fn assemble(grid: &Grid<'_>, segments: &[(Edge, Edge)]) -> Vec<Polyline> {
    let mut incident: HashMap<Edge, Vec<usize>> = HashMap::new();
    for (idx, &(a, b)) in segments.iter().enumerate() {
        incident.entry(a).or_default().push(idx);
        incident.entry(b).or_default().push(idx);
    }
    let mut used = vec![false; segments.len()];
    let mut out = Vec::new();

    let walk = |start_seg: usize, start_edge: Edge, used: &mut Vec<bool>| -> Polyline {
        let mut line = vec![grid.crossing(start_edge)];
        let mut seg = start_seg;
        let mut at = start_edge;
        loop {
            used[seg] = true;
            let (a, b) = segments[seg];
            let next = if a == at { b } else { a };
            line.push(grid.crossing(next));
            at = next;
            match incident[&at].iter().copied().find(|&s| !used[s]) {
                Some(s) => seg = s,
                None => break,
            }
        }
        line
    };

    for idx in 0..segments.len() {
        if used[idx] {
            continue;
        }
        let (a, b) = segments[idx];
        // Open chain: begin from an end that no other segment touches.
        let a_open = incident[&a].len() == 1;
        let b_open = incident[&b].len() == 1;
        if a_open || b_open {
            let start = if a_open { a } else { b };
            out.push(walk(idx, start, &mut used));
        }
    }
    for idx in 0..segments.len() {
        if !used[idx] {
            let start = segments[idx].0;
            out.push(walk(idx, start, &mut used));
        }
    }
    out
}

fn segment_intersection(
    p: (f64, f64),
    p2: (f64, f64),
    q: (f64, f64),
    q2: (f64, f64),
) -> Option<(f64, f64)> {
    let r = (p2.0 - p.0, p2.1 - p.1);
    let s = (q2.0 - q.0, q2.1 - q.1);
    let denom = r.0 * s.1 - r.1 * s.0;
    let qp = (q.0 - p.0, q.1 - p.1);
    if denom == 0.0 {
        // Collinear overlap (both curves along a grid line): report the
        // shared endpoint if there is one.
        let cross = qp.0 * r.1 - qp.1 * r.0;
        if cross != 0.0 {
            return None;
        }
        return [q, q2].into_iter().find(|&c| c == p || c == p2);
    }
    let t = (qp.0 * s.1 - qp.1 * s.0) / denom;
    let u = (qp.0 * r.1 - qp.1 * r.0) / denom;
    ((0.0..=1.0).contains(&t) && (0.0..=1.0).contains(&u)).then_some((p.0 + t * r.0, p.1 + t * r.1))
}

/// Crossing points of two contour sets on the same grid, clustered so that
/// points within one cell diagonal of each other are reported once (at their
/// centroid).
pub fn intersect_contours(a: &ContourSet, b: &ContourSet) -> Vec<(f64, f64)> {
    let bbox = a.bbox;
    let n = a.resolution as isize;
    let (cw, ch) = (a.cell_width(), a.cell_height());
    let cell_of = |(x, y): (f64, f64)| -> (isize, isize) {
        (
            (((x - bbox.xmin) / cw).floor() as isize).clamp(0, n - 1),
            (((y - bbox.ymin) / ch).floor() as isize).clamp(0, n - 1),
        )
    };
    let midpoint = |p: (f64, f64), q: (f64, f64)| (0.5 * (p.0 + q.0), 0.5 * (p.1 + q.1));

    let mut buckets: HashMap<(isize, isize), Vec<Segment>> = HashMap::new();
    for line in &b.polylines {
        for w in line.windows(2) {
            buckets
                .entry(cell_of(midpoint(w[0], w[1])))
                .or_default()
                .push((w[0], w[1]));
        }
    }

    let mut hits = Vec::new();
    for line in &a.polylines {
        for w in line.windows(2) {
            let (ci, cj) = cell_of(midpoint(w[0], w[1]));
            for di in -1..=1 {
                for dj in -1..=1 {
                    let Some(cands) = buckets.get(&(ci + di, cj + dj)) else {
                        continue;
                    };
                    for &(q, q2) in cands {
                        if let Some(pt) = segment_intersection(w[0], w[1], q, q2) {
                            hits.push(pt);
                        }
                    }
                }
            }
        }
    }

    let diag = cw.hypot(ch);
    let mut clusters: Vec<((f64, f64), usize)> = Vec::new();
    for pt in hits {
        match clusters
            .iter_mut()
            .find(|(c, _)| (c.0 - pt.0).hypot(c.1 - pt.1) <= diag)
        {
            Some((c, count)) => {
                let m = *count as f64;
                *c = ((c.0 * m + pt.0) / (m + 1.0), (c.1 * m + pt.1) / (m + 1.0));
                *count += 1;
            }
            None => clusters.push((pt, 1)),
        }
    }
    clusters.into_iter().map(|(c, _)| c).collect()
}
