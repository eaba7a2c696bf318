use harmonic_atlas::analytic::parse_expr;
use harmonic_atlas::catalog::catalog_lookup;
use harmonic_atlas::render::{render_svg, Rect, RenderOptions, Viewport};
use harmonic_atlas::HarmonicMap;

fn conformal(s: &str) -> HarmonicMap {
    HarmonicMap::conformal(parse_expr(s).unwrap(), 16).unwrap()
}

/// (class, subpaths) for every path; y is flipped back to the math orientation.
fn paths(svg: &str) -> Vec<(String, Vec<Vec<(f64, f64)>>)> {
    let doc = roxmltree::Document::parse(svg).expect("well-formed SVG");
    let root = doc.root_element();
    assert_eq!(root.tag_name().name(), "svg");
    assert_eq!(root.attribute("version"), Some("1.1"));
    root.children()
        .filter(|n| n.has_tag_name("path"))
        .map(|n| {
            let mut subs: Vec<Vec<(f64, f64)>> = Vec::new();
            let toks: Vec<&str> = n.attribute("d").unwrap().split_whitespace().collect();
            let mut i = 0;
            while i < toks.len() {
                let t = toks[i];
                if t == "Z" {
                    i += 1;
                    continue;
                }
                let x: f64 = t[1..].parse().unwrap();
                let y: f64 = toks[i + 1].parse().unwrap();
                assert!(x.is_finite() && y.is_finite());
                if t.starts_with('M') {
                    subs.push(Vec::new());
                }
                subs.last_mut().unwrap().push((x, -y));
                i += 2;
            }
            (n.attribute("class").unwrap().to_string(), subs)
        })
        .collect()
}

#[test]
fn identity_picture() {
    let opts = RenderOptions { circles: 4, rays: 6, ..Default::default() };
    let svg = render_svg(&conformal("z"), &opts).unwrap();
    let ps = paths(&svg);
    assert_eq!(ps.iter().filter(|p| p.0 == "circle").count(), 4);
    assert_eq!(ps.iter().filter(|p| p.0 == "ray").count(), 6);
    let boundary = &ps.iter().find(|p| p.0 == "boundary").unwrap().1;
    assert_eq!(boundary.len(), 1);
    for (x, y) in &boundary[0] {
        assert!(((x * x + y * y).sqrt() - 0.999).abs() < 1e-5);
    }
    // rays are straight
    for (_, subs) in ps.iter().filter(|p| p.0 == "ray") {
        let pts = &subs[0];
        let (x1, y1) = *pts.last().unwrap();
        for (x, y) in pts {
            assert!((x * y1 - y * x1).abs() < 1e-5);
        }
    }
}

#[test]
fn three_cusped_boundary_is_closed() {
    let f = catalog_lookup("f17_cv1").unwrap().map(16).unwrap();
    let svg = render_svg(&f, &RenderOptions::default()).unwrap();
    assert!(svg.lines().any(|l| l.contains("class=\"boundary\"") && l.contains(" Z\"")));
    let ps = paths(&svg);
    assert_eq!(ps.iter().find(|p| p.0 == "boundary").unwrap().1.len(), 1);
}

#[test]
fn slit_map_boundary_has_gaps_and_hugs_the_slits() {
    let svg = render_svg(&conformal("z/(1-z^2)"), &RenderOptions::default()).unwrap();
    let ps = paths(&svg);
    let boundary = &ps.iter().find(|p| p.0 == "boundary").unwrap().1;
    assert!(boundary.len() >= 2, "expected gaps, got {} subpaths", boundary.len());
    let pts: Vec<_> = boundary.iter().flatten().collect();
    let near = pts.iter().filter(|(x, y)| x.abs() < 0.05 && y.abs() >= 0.45).count();
    assert!(near as f64 >= 0.9 * pts.len() as f64, "{near} of {}", pts.len());
}

#[test]
fn harmonic_koebe_has_boundary_gaps() {
    let f = catalog_lookup("harmonic_koebe").unwrap().map(16).unwrap();
    let svg = render_svg(&f, &RenderOptions::default()).unwrap();
    // the slit runs off to infinity: points are dropped and the path stays open
    let ps = paths(&svg);
    let boundary = &ps.iter().find(|p| p.0 == "boundary").unwrap().1;
    let kept: usize = boundary.iter().map(Vec::len).sum();
    assert!(kept < RenderOptions::default().samples_per_curve);
    assert!(svg.lines().any(|l| l.contains("class=\"boundary\"") && !l.contains(" Z\"")));
}

#[test]
fn output_is_deterministic() {
    let f = catalog_lookup("f3_cv1").unwrap().map(16).unwrap();
    let a = render_svg(&f, &RenderOptions::default()).unwrap();
    let b = render_svg(&f, &RenderOptions::default()).unwrap();
    assert_eq!(a, b);
}

#[test]
fn explicit_viewport_and_bad_options() {
    let rect = Rect { x_min: -2.0, y_min: -1.0, x_max: 2.0, y_max: 1.0 };
    let opts = RenderOptions { viewport: Viewport::Explicit(rect), ..Default::default() };
    let svg = render_svg(&conformal("z"), &opts).unwrap();
    assert!(svg.contains("viewBox=\"-2.000000 -1.000000 4.000000 2.000000\""));
    assert!(render_svg(&conformal("z"), &RenderOptions { rays: 0, ..Default::default() }).is_err());
    assert!(render_svg(&conformal("z"), &RenderOptions { r_max: 1.0, ..Default::default() }).is_err());
}
