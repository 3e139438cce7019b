//! Acceptance suite: one PASS/FAIL line per criterion; exits non-zero if any
//! criterion fails.

mod common;

use std::process::{Command, ExitCode};

use common::{close, hausdorff, rel_close, Oracle};
use pauli_pt::conic::{classify_locus, find_transition, reflection_check, ConicKind, KindTag};
use pauli_pt::contour::{contour_field, default_bbox, intersect_contours, FieldKind};
use pauli_pt::field::{expand_re_im, h_field, s_field, BiPoly};
use pauli_pt::pauli::Preset;
use pauli_pt::pt::{
    axis_scan, pt_locus_at_level, zeros, Axis, Locus, LocusResult, PtAnalyzer, PtPoint, PtTag,
};
use pauli_pt::Execution;

type Check = Result<(), String>;
type Criterion = (&'static str, fn() -> Check);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        let ok: bool = $cond;
        if !ok {
            return Err(format!($($msg)+));
        }
    };
}

fn t(terms: &[(i64, u32, u32)]) -> BiPoly {
    BiPoly::from_int_terms(terms)
}

fn sum(parts: Vec<BiPoly>) -> BiPoly {
    parts.iter().fold(BiPoly::zero(), |acc, p| &acc + p)
}

/// Hand-expanded closed forms of `(s, h)` for each preset.
fn closed_forms(p: Preset) -> (BiPoly, BiPoly) {
    let xy = t(&[(1, 1, 1)]);
    let x2_y2 = t(&[(1, 2, 0), (-1, 0, 2)]);
    let re_z3 = t(&[(1, 3, 0), (-3, 1, 2)]);
    let im_z3 = t(&[(3, 2, 1), (-1, 0, 3)]);
    match p {
        Preset::P1 => (xy, x2_y2),
        Preset::P2 => (
            &xy + &(&t(&[(2, 1, 1)]) * &x2_y2),
            sum(vec![
                t(&[(1, 2, 0)]),
                x2_y2.pow(2),
                -&t(&[(1, 0, 2), (4, 2, 2)]),
            ]),
        ),
        Preset::Pt1 => (BiPoly::zero(), BiPoly::constant(1)),
        Preset::Pt2 => (
            &t(&[(2, 1, 1)]) * &x2_y2,
            sum(vec![x2_y2.pow(2), BiPoly::constant(1), t(&[(-4, 2, 2)])]),
        ),
        Preset::P3 => (
            sum(vec![xy, &t(&[(2, 1, 1)]) * &x2_y2, &re_z3 * &im_z3]),
            sum(vec![
                t(&[(1, 6, 0), (-1, 0, 2), (1, 0, 4), (-1, 0, 6)]),
                &t(&[(1, 4, 0)]) * &t(&[(1, 0, 0), (-15, 0, 2)]),
                &t(&[(1, 2, 0)]) * &t(&[(1, 0, 0), (-6, 0, 2), (15, 0, 4)]),
            ]),
        ),
        Preset::Pt3 => (
            &(&t(&[(2, 1, 1)]) * &x2_y2) + &(&re_z3 * &im_z3),
            sum(vec![
                t(&[(1, 0, 0), (1, 6, 0), (1, 0, 4), (-1, 0, 6)]),
                &t(&[(1, 4, 0)]) * &t(&[(1, 0, 0), (-15, 0, 2)]),
                &t(&[(3, 2, 2)]) * &t(&[(-2, 0, 0), (5, 0, 2)]),
            ]),
        ),
        Preset::Q10 => {
            let s = sum(vec![
                &t(&[(8, 7, 1), (-56, 5, 3), (56, 3, 5), (-8, 1, 7)])
                    * &t(&[(1, 8, 0), (-28, 6, 2), (70, 4, 4), (-28, 2, 6), (1, 0, 8)]),
                &t(&[(1, 9, 0), (-36, 7, 2), (126, 5, 4), (-84, 3, 6), (9, 1, 8)])
                    * &t(&[(9, 8, 1), (-84, 6, 3), (126, 4, 5), (-36, 2, 7), (1, 0, 9)]),
                &t(&[
                    (10, 9, 1),
                    (-120, 7, 3),
                    (252, 5, 5),
                    (-120, 3, 7),
                    (10, 1, 9),
                ]) * &t(&[
                    (1, 10, 0),
                    (-45, 8, 2),
                    (210, 6, 4),
                    (-210, 4, 6),
                    (45, 2, 8),
                    (-1, 0, 10),
                ]),
            ]);
            let quad = |c: i64, i: u32, j: u32, q: [i64; 3]| {
                &t(&[(c, i, j)]) * &t(&[(q[0], 0, 0), (q[1], 0, 2), (q[2], 0, 4)])
            };
            let h = sum(vec![
                t(&[(1, 20, 0)]),
                &t(&[(1, 18, 0)]) * &t(&[(1, 0, 0), (-190, 0, 2)]),
                quad(1, 2, 14, [-120, 153, -190]),
                quad(1, 0, 16, [1, -1, 1]),
                quad(-286, 10, 6, [28, -153, 646]),
                quad(-60, 14, 2, [2, -51, 646]),
                quad(5, 4, 12, [364, -612, 969]),
                quad(78, 8, 8, [165, -561, 1615]),
                quad(26, 12, 4, [70, -714, 4845]),
                quad(1, 16, 0, [1, -153, 4845]),
                quad(-4, 6, 10, [2002, -4641, 9690]),
            ]);
            (s, h)
        }
    }
}

fn field_identities() -> Check {
    for preset in Preset::ALL {
        let p = preset.build();
        let (s, h) = (s_field(&p), h_field(&p));
        let (re, im) = expand_re_im(p.g_poly());
        ensure!(h == re, "{preset}: h differs from Re g");
        ensure!(&s + &s == im, "{preset}: 2s differs from Im g");
        let (s_ref, h_ref) = closed_forms(preset);
        ensure!(s == s_ref, "{preset}: s = {s}, expected {s_ref}");
        ensure!(h == h_ref, "{preset}: h = {h}, expected {h_ref}");
    }
    Ok(())
}

fn finite(preset: Preset, k: f64) -> Result<LocusResult, String> {
    match pt_locus_at_level(&preset.build(), k).map_err(|e| e.to_string())? {
        Locus::Finite(l) => Ok(l),
        other => Err(format!("{preset} at k={k}: {other:?}")),
    }
}

fn has_point(l: &LocusResult, x: f64, y: f64, tol: f64) -> bool {
    l.points
        .iter()
        .any(|p| close(p.x, x, tol) && close(p.y, y, tol))
}

fn signed_pairs(x: f64, y: f64) -> [(f64, f64); 4] {
    [(x, y), (-x, y), (x, -y), (-x, -y)]
}

fn p2_golden() -> Check {
    let l = finite(Preset::P2, -1.0)?;
    ensure!(
        l.distinct_count() == 4,
        "k=-1: {} points",
        l.distinct_count()
    );
    for (x, y) in signed_pairs(0.5, 3f64.sqrt() / 2.0) {
        ensure!(has_point(&l, x, y, 1e-9), "k=-1: missing ({x}, {y})");
    }
    ensure!(
        l.points.iter().all(|p| p.tag == PtTag::BrokenPT),
        "k=-1: tags"
    );
    let c = classify_locus(&l).map_err(|e| e.to_string())?;
    ensure!(
        matches!(c.kind, ConicKind::Circle { r } if close(r, 1.0, 1e-6)),
        "k=-1: {:?}",
        c.kind
    );

    let l = finite(Preset::P2, 1.0)?;
    for (x, y) in [
        (0.0, 1.27202),
        (0.0, -1.27202),
        (0.786151, 0.0),
        (-0.786151, 0.0),
    ] {
        ensure!(has_point(&l, x, y, 1e-4), "k=1: missing ({x}, {y})");
    }

    let l = finite(Preset::P2, -0.25)?;
    ensure!(
        l.distinct_count() == 2,
        "k=-0.25: {} distinct",
        l.distinct_count()
    );
    let r = 0.5f64.sqrt();
    for y in [r, -r] {
        ensure!(has_point(&l, 0.0, y, 1e-8), "k=-0.25: missing (0, {y})");
    }
    ensure!(
        l.points.iter().all(|p| p.multiplicity == 2),
        "k=-0.25: multiplicities"
    );
    Ok(())
}

fn p3_golden() -> Check {
    // (k, off-axis x, off-axis y, axis coordinate, axis is y, expected tag)
    let cases = [
        (
            -0.411,
            0.565899,
            0.739613,
            0.739209,
            true,
            KindTag::HyperbolaY,
        ),
        (-0.412, 0.566204, 0.739425, 0.74005, true, KindTag::Ellipse),
        (
            0.347,
            0.51107,
            0.94431,
            0.510938,
            false,
            KindTag::HyperbolaX,
        ),
        (0.348, 0.511115, 0.944488, 0.511504, false, KindTag::Ellipse),
    ];
    for (k, x1, y1, a, on_y, kind) in cases {
        let l = finite(Preset::P3, k)?;
        ensure!(
            l.distinct_count() == 6,
            "k={k}: {} points",
            l.distinct_count()
        );
        for (x, y) in signed_pairs(x1, y1) {
            ensure!(has_point(&l, x, y, 1e-4), "k={k}: missing ({x}, {y})");
        }
        let axis = if on_y {
            [(0.0, a), (0.0, -a)]
        } else {
            [(a, 0.0), (-a, 0.0)]
        };
        for (x, y) in axis {
            ensure!(has_point(&l, x, y, 1e-4), "k={k}: missing ({x}, {y})");
        }
        let c = classify_locus(&l).map_err(|e| e.to_string())?;
        ensure!(c.kind.tag() == kind, "k={k}: {:?}", c.kind);
    }
    Ok(())
}

fn transitions() -> Check {
    let p3 = Preset::P3.build();
    for ((lo, hi), want) in [((0.2, 0.5), 0.347), ((-0.5, -0.3), -0.411)] {
        let t = find_transition(&p3, lo, hi).map_err(|e| e.to_string())?;
        ensure!(
            close(t.k_star, want, 1e-3),
            "P3 in [{lo}, {hi}]: {}",
            t.k_star
        );
    }
    let t = find_transition(&Preset::P2.build(), -0.5, -0.1).map_err(|e| e.to_string())?;
    ensure!(close(t.k_star, -0.25, 1e-6), "P2: {}", t.k_star);
    Ok(())
}

fn zeros_of(preset: Preset) -> Result<Vec<PtPoint>, String> {
    zeros(&preset.build()).map_err(|e| format!("{preset}: {e}"))
}

fn zeros_check() -> Check {
    let z1 = zeros_of(Preset::P1)?;
    ensure!(z1.len() == 2, "P1: {} zeros", z1.len());
    for x in [1.0, -1.0] {
        ensure!(
            z1.iter()
                .any(|p| close(p.x, x, 1e-12) && p.y == 0.0 && p.tag == PtTag::UnbrokenPT),
            "P1: zero at {x}"
        );
    }
    for preset in [Preset::P2, Preset::P3] {
        for p in zeros_of(preset)? {
            ensure!(
                p.tag == PtTag::UnbrokenPT,
                "{preset}: {:?} at ({}, {})",
                p.tag,
                p.x,
                p.y
            );
            let mut e = [p.eigenvalues.e_minus, p.eigenvalues.e_plus];
            e.sort_by(|a, b| a.re.total_cmp(&b.re));
            ensure!(
                e[0].norm() <= 1e-8 && (e[1] - 2.0).norm() <= 1e-8,
                "{preset}: eigenvalues {e:?}"
            );
        }
    }
    for preset in [Preset::Pt2, Preset::Pt3] {
        for p in zeros_of(preset)? {
            ensure!(
                p.tag == PtTag::NotPTSymmetric,
                "{preset}: {:?} at ({}, {})",
                p.tag,
                p.x,
                p.y
            );
        }
    }
    let zt = zeros_of(Preset::Pt1)?;
    let pos = |v: &[PtPoint]| v.iter().map(|p| (p.x, p.y)).collect::<Vec<_>>();
    ensure!(
        hausdorff(&pos(&zt), &pos(&z1)) <= 1e-12,
        "Pt1 zeros differ from P1"
    );
    Ok(())
}

fn large_k_reflection() -> Check {
    let k = 1e17;
    let p3 = Preset::P3.build();
    let r = reflection_check(&p3, k).map_err(|e| e.to_string())?;
    ensure!(
        r.holds && r.max_deviation <= 1e-6,
        "deviation {:e}",
        r.max_deviation
    );

    let l = finite(Preset::P3, k)?;
    let (x1, y1, x2) = (340.646, 590.016, 681.292);
    let near = |a: f64, b: f64| rel_close(a.abs(), b.abs(), 1e-3);
    for (x, y) in signed_pairs(x1, y1) {
        ensure!(
            l.points.iter().any(|p| near(p.x, x)
                && near(p.y, y)
                && p.x.signum() == x.signum()
                && p.y.signum() == y.signum()),
            "missing ({x}, {y})"
        );
    }
    for x in [x2, -x2] {
        ensure!(
            l.points
                .iter()
                .any(|p| near(p.x, x2) && p.x.signum() == x.signum() && p.y == 0.0),
            "missing ({x}, 0)"
        );
    }
    let rk = k.sqrt();
    for p in &l.points {
        let (lo, hi) = (p.eigenvalues.e_minus, p.eigenvalues.e_plus);
        ensure!(
            rel_close(lo.re, 1.0 - rk, 1e-6)
                && rel_close(hi.re, 1.0 + rk, 1e-6)
                && lo.im == 0.0
                && hi.im == 0.0,
            "+k eigenvalues {lo} {hi}"
        );
    }
    let l = finite(Preset::P3, -k)?;
    for p in &l.points {
        let (lo, hi) = (p.eigenvalues.e_minus, p.eigenvalues.e_plus);
        ensure!(
            rel_close(lo.re, 1.0, 1e-6) && rel_close(hi.re, 1.0, 1e-6),
            "-k eigenvalue real parts {lo} {hi}"
        );
        ensure!(
            rel_close(lo.im.abs(), rk, 1e-6) && rel_close(hi.im.abs(), rk, 1e-6) && lo.im == -hi.im,
            "-k eigenvalue imaginary parts {lo} {hi}"
        );
    }
    Ok(())
}

fn q10() -> Check {
    let l = finite(Preset::Q10, 0.0)?;
    ensure!(
        l.distinct_count() == 5,
        "k=0: {} distinct points",
        l.distinct_count()
    );
    ensure!(
        l.points
            .iter()
            .any(|p| p.x == 0.0 && p.y == 0.0 && p.multiplicity == 16),
        "k=0: origin with multiplicity 16"
    );
    for (x, y) in signed_pairs(0.5, 3f64.sqrt() / 2.0) {
        ensure!(has_point(&l, x, y, 1e-8), "k=0: missing ({x}, {y})");
    }
    ensure!(
        l.total_multiplicity() == 20,
        "k=0: multiplicity {}",
        l.total_multiplicity()
    );
    for k in [1.0, -1.0, 0.5, -0.5, 1e-4, -1e-4] {
        let l = finite(Preset::Q10, k)?;
        ensure!(
            l.total_multiplicity() == 20,
            "k={k}: {} points",
            l.total_multiplicity()
        );
        let rk = k.abs().sqrt();
        for p in &l.points {
            let (lo, hi) = (p.eigenvalues.e_minus, p.eigenvalues.e_plus);
            let ok = if k > 0.0 {
                close(lo.re, -rk, 1e-8) && close(hi.re, rk, 1e-8) && lo.im == 0.0 && hi.im == 0.0
            } else {
                close(lo.im.abs(), rk, 1e-8)
                    && close(hi.im.abs(), rk, 1e-8)
                    && lo.re.abs() <= 1e-8
                    && hi.re.abs() <= 1e-8
            };
            ensure!(ok, "k={k}: eigenvalues {lo} {hi} at ({}, {})", p.x, p.y);
        }
    }
    Ok(())
}

fn oracle_equivalence() -> Check {
    for preset in Preset::ALL {
        let p = preset.build();
        if p.g_poly().is_constant() {
            continue;
        }
        let oracle = Oracle::new(&p);
        let a = PtAnalyzer::new(&p);
        for k in [-1.0, -0.5, 0.0, 0.5, 1.0] {
            let l = a.locus(k).map_err(|e| e.to_string())?;
            let l = l
                .finite()
                .ok_or_else(|| format!("{preset} at k={k}: not finite"))?;
            let pts: Vec<(f64, f64)> = l.points.iter().map(|q| (q.x, q.y)).collect();
            let d = hausdorff(&pts, &oracle.level_set(k, 400));
            ensure!(d <= 1e-6, "{preset} at k={k}: Hausdorff {d:e}");
        }
    }
    Ok(())
}

fn degenerate_pt1() -> Check {
    let p = Preset::Pt1.build();
    let whole = pt_locus_at_level(&p, 1.0).map_err(|e| e.to_string())?;
    ensure!(whole == Locus::WholePlane, "k=1: {whole:?}");
    for k in [0.0, -1.0, 0.999, 2.0, 1e6] {
        let l = pt_locus_at_level(&p, k).map_err(|e| e.to_string())?;
        ensure!(l == Locus::Empty, "k={k}: {l:?}");
    }
    let scan = axis_scan(&p, Axis::X, -2.0, 2.0, 41).map_err(|e| e.to_string())?;
    ensure!(scan.len() == 41, "{} scan points", scan.len());
    for q in scan {
        ensure!(q.tag == PtTag::UnbrokenPT, "x={}: {:?}", q.x, q.tag);
        let (lo, hi) = (q.eigenvalues.e_minus, q.eigenvalues.e_plus);
        ensure!(
            (lo - (q.x - 1.0)).norm() <= 1e-10 && (hi - (q.x + 1.0)).norm() <= 1e-10,
            "x={}: eigenvalues {lo} {hi}",
            q.x
        );
    }
    Ok(())
}

fn contour_consistency() -> Check {
    let p = Preset::P3.build();
    let a = PtAnalyzer::new(&p);
    for k in [-1.0, 0.0, 1.0] {
        let bbox = default_bbox(&p, k);
        let exec = Execution::default();
        let s = contour_field(a.fields(), FieldKind::S, 0.0, bbox, 512, exec)
            .map_err(|e| e.to_string())?;
        let h = contour_field(a.fields(), FieldKind::H, k, bbox, 512, exec)
            .map_err(|e| e.to_string())?;
        let crossings = intersect_contours(&s, &h);
        let l = finite(Preset::P3, k)?;
        let pts: Vec<(f64, f64)> = l.points.iter().map(|q| (q.x, q.y)).collect();
        let d = hausdorff(&pts, &crossings);
        let cell = s.cell_width().max(s.cell_height());
        ensure!(d <= 2.0 * cell, "k={k}: {:.2} cells", d / cell);
    }

    let bin = env!("CARGO_BIN_EXE_pauli-pt");
    let invocations: [&[&str]; 4] = [
        &["contour", "--preset", "P3", "--k", "1", "--format", "json"],
        &["contour", "--preset", "P3", "--k", "-1", "--format", "svg"],
        &["locus", "--preset", "Q10", "--k", "0.5", "--format", "csv"],
        &[
            "conic", "--preset", "P3", "--k", "0.347", "--format", "json",
        ],
    ];
    for args in invocations {
        let run = || {
            Command::new(bin)
                .args(args)
                .output()
                .map_err(|e| e.to_string())
        };
        let (first, second) = (run()?, run()?);
        ensure!(
            first.status.success(),
            "{args:?}: exit {:?}",
            first.status.code()
        );
        ensure!(!first.stdout.is_empty(), "{args:?}: empty output");
        ensure!(first.stdout == second.stdout, "{args:?}: outputs differ");
    }
    Ok(())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("field identities", field_identities),
        ("P2 golden loci", p2_golden),
        ("P3 golden loci", p3_golden),
        ("transitions", transitions),
        ("zeros", zeros_check),
        ("large-k reflection", large_k_reflection),
        ("Q10 loci", q10),
        ("oracle equivalence", oracle_equivalence),
        ("degenerate Pt1", degenerate_pt1),
        ("contour consistency", contour_consistency),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(()) => println!("criterion {:>2} {name}: PASS", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} {name}: FAIL ({why})", i + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}
