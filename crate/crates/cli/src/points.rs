//! The point-file format: one point per line, whitespace-separated rationals
//! (`n` or `n/d`), `#` starts a comment. Surface points have four Cox
//! coordinates; plane points (for `F_1`) have three and are lifted through
//! the blow-up at `(0:0:1)`.

use fatpoints::arrangements::{PlanePoint, ProjLine};
use fatpoints::configs::blowup_point;
use fatpoints::exactalg::{format_rational, parse_rational, BigRational};
use fatpoints::toric::{HirzebruchSurface, SurfacePoint};
use fatpoints::{Error, Result};

/// Parses surface points for `F_r`. Torus-equivalent repeats are rejected
/// with the line number of the repeat.
pub fn parse_points(text: &str, surface: HirzebruchSurface) -> Result<Vec<SurfacePoint>> {
    collect_points(text, surface, 4, |c| SurfacePoint::new(c.try_into().expect("four fields")))
}

/// Parses plane points and lifts them to `F_1`.
pub fn parse_plane_points(text: &str) -> Result<Vec<SurfacePoint>> {
    collect_points(text, HirzebruchSurface::new(1)?, 3, |c| {
        blowup_point(&PlanePoint::new(c.try_into().expect("three fields"))?)
    })
}

/// Parses line coefficients `a b c` (the line `ax + by + cz = 0`), one per
/// line of text.
pub fn parse_lines(text: &str) -> Result<Vec<ProjLine>> {
    let mut lines: Vec<ProjLine> = Vec::new();
    for (line, c) in records(text, 3)? {
        let l = ProjLine::new(c.try_into().expect("three fields")).map_err(|e| at(line, e))?;
        if lines.contains(&l) {
            return Err(Error::Parse { line, message: "line repeats an earlier line".into() });
        }
        lines.push(l);
    }
    Ok(lines)
}

/// Nonblank records of exactly `arity` rationals, with 1-based line numbers.
fn records(text: &str, arity: usize) -> Result<Vec<(usize, Vec<BigRational>)>> {
    let mut out = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let fields: Vec<&str> = body.split_whitespace().collect();
        if fields.len() != arity {
            return Err(Error::Parse { line, message: format!("expected {arity} numbers, found {}", fields.len()) });
        }
        let values = fields.iter().map(|f| parse_rational(f).map_err(|e| at(line, e))).collect::<Result<_>>()?;
        out.push((line, values));
    }
    Ok(out)
}

fn at(line: usize, e: Error) -> Error {
    match e {
        Error::Parse { message, .. } => Error::Parse { line, message },
        Error::CenterPoint => Error::Parse { line, message: "the blow-up center (0:0:1) is not a point of F_1".into() },
        other => Error::Parse { line, message: other.to_string() },
    }
}

fn collect_points(
    text: &str,
    surface: HirzebruchSurface,
    arity: usize,
    build: impl Fn(Vec<BigRational>) -> Result<SurfacePoint>,
) -> Result<Vec<SurfacePoint>> {
    let mut points: Vec<SurfacePoint> = Vec::new();
    for (line, c) in records(text, arity)? {
        let p = build(c).map_err(|e| at(line, e))?;
        if points.iter().any(|q| surface.same_point(&p, q)) {
            return Err(Error::DuplicatePoint { line });
        }
        points.push(p);
    }
    if points.is_empty() {
        return Err(Error::InvalidInput("no points given".into()));
    }
    Ok(points)
}

/// Cox coordinates as reduced fractions.
pub fn point_strings(p: &SurfacePoint) -> [String; 4] {
    p.coords().clone().map(|x| format_rational(&x))
}

#[cfg(test)]
mod tests {
    use super::*;
    use fatpoints::toric::is_on_negative_curve;

    fn f(r: u32) -> HirzebruchSurface {
        HirzebruchSurface::new(r).unwrap()
    }

    #[test]
    fn point_on_negative_curve() {
        let pts = parse_points("1 0 0 1\n", f(2)).unwrap();
        assert!(is_on_negative_curve(&pts[0]));
    }

    #[test]
    fn rational_coordinates() {
        let pts = parse_points("# header\n1 1 2/3 -5   # trailing\n\n", f(2)).unwrap();
        assert_eq!(point_strings(&pts[0]), ["1", "1", "2/3", "-5"].map(String::from));
    }

    #[test]
    fn duplicates_report_their_line() {
        assert_eq!(parse_points("1 0 0 1\n1 0 0 1\n", f(2)), Err(Error::DuplicatePoint { line: 2 }));
        // (1,1,1,1) and (2,1,2,4) agree under lambda = 2 on F_2
        assert_eq!(parse_points("1 1 1 1\n\n2 1 2 4\n", f(2)), Err(Error::DuplicatePoint { line: 3 }));
    }

    #[test]
    fn malformed_lines() {
        assert!(matches!(parse_points("1 0 0\n", f(1)), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(parse_points("1 1 1 1\n1 x 0 1\n", f(1)), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(parse_points("0 1 0 1\n", f(1)), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(parse_points("1 1 1/0 1\n", f(1)), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(parse_points("# nothing\n", f(1)), Err(Error::InvalidInput(_))));
    }

    #[test]
    fn plane_points_lift() {
        let pts = parse_plane_points("1 2 3\n0 1 5\n").unwrap();
        assert_eq!(point_strings(&pts[0]), ["1", "1", "2", "3"].map(String::from));
        assert!(matches!(parse_plane_points("0 0 4\n"), Err(Error::Parse { line: 1, .. })));
    }

    #[test]
    fn arrangement_lines() {
        assert_eq!(parse_lines("1 0 0\n0 1 0\n1 1 -1\n").unwrap().len(), 3);
        assert!(matches!(parse_lines("1 0 0\n2 0 0\n"), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(parse_lines("0 0 0\n"), Err(Error::Parse { line: 1, .. })));
    }
}
