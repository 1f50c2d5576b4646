//! Small complexes bundled with the library.

use crate::simplex::SimplicialComplex;

const SOURCES: [(&str, &str); 5] = [
    ("circle", include_str!("../fixtures/circle.json")),
    ("sphere", include_str!("../fixtures/sphere.json")),
    ("sphere3", include_str!("../fixtures/sphere3.json")),
    ("rp2", include_str!("../fixtures/rp2.json")),
    ("torus", include_str!("../fixtures/torus.json")),
];

/// Names accepted by [`by_name`].
pub fn names() -> impl Iterator<Item = &'static str> {
    SOURCES.iter().map(|(n, _)| *n)
}

pub fn by_name(name: &str) -> Option<SimplicialComplex> {
    SOURCES
        .iter()
        .find(|(n, _)| *n == name)
        .map(|(_, src)| SimplicialComplex::from_json(src).expect("bundled fixture parses"))
}

/// The raw JSON of a bundled complex.
pub fn source(name: &str) -> Option<&'static str> {
    SOURCES.iter().find(|(n, _)| *n == name).map(|(_, s)| *s)
}

/// `∂Δ^2`.
pub fn circle() -> SimplicialComplex {
    by_name("circle").unwrap()
}

/// `∂Δ^3`.
pub fn sphere() -> SimplicialComplex {
    by_name("sphere").unwrap()
}

/// `∂Δ^4`.
pub fn sphere3() -> SimplicialComplex {
    by_name("sphere3").unwrap()
}

/// The 6-vertex real projective plane.
pub fn rp2() -> SimplicialComplex {
    by_name("rp2").unwrap()
}

/// The 7-vertex torus.
pub fn torus() -> SimplicialComplex {
    by_name("torus").unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_fixtures_load() {
        for n in names() {
            let c = by_name(n).unwrap();
            assert_eq!(c.name(), n);
        }
        assert!(by_name("klein").is_none());
    }

    #[test]
    fn closed_surfaces_are_pseudomanifolds() {
        for c in [rp2(), torus(), sphere()] {
            let tris = c.simplices(2);
            for e in c.simplices(1) {
                let cofaces = tris
                    .iter()
                    .filter(|t| (0..3).any(|i| &t.face(i).unwrap() == e))
                    .count();
                assert_eq!(cofaces, 2, "{} edge {e}", c.name());
            }
        }
        let euler =
            |c: &SimplicialComplex| c.count(0) as i64 - c.count(1) as i64 + c.count(2) as i64;
        assert_eq!(euler(&rp2()), 1);
        assert_eq!(euler(&torus()), 0);
    }
}
