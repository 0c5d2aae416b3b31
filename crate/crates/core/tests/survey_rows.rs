use nlsym::qls::{orbit_representatives, survey, Reduction};
use nlsym::AbelianGroup;

fn row(spec: &str) -> (usize, usize, usize, usize) {
    let g: AbelianGroup = spec.parse().unwrap();
    let r = survey(&g).unwrap();
    assert!(r.classical_matches_aut);
    assert_eq!(r.inconclusive, 0);
    assert_eq!(r.local + r.nonlocal, r.distinct);
    r.counts()
}

#[test]
fn z4_row() {
    assert_eq!(row("Z4"), (3, 2, 3, 0));
}

#[test]
fn z5_row() {
    assert_eq!(row("Z5"), (8, 4, 4, 4));
}

#[test]
fn z6_row() {
    assert_eq!(row("Z6"), (20, 2, 5, 15));
}

#[test]
fn z2_squared_row() {
    assert_eq!(row("Z2xZ2"), (6, 6, 6, 0));
}

#[test]
fn z7_row() {
    assert_eq!(row("Z7"), (78, 6, 12, 66));
}

#[test]
fn z8_row() {
    assert_eq!(row("Z8"), (380, 4, 10, 370));
}

#[test]
fn z2_cubed_row() {
    assert_eq!(row("Z2xZ2xZ2"), (924, 168, 924, 0));
}

#[test]
fn z2_z4_row() {
    assert_eq!(row("Z2xZ4"), (460, 8, 284, 176));
}

#[test]
fn correlation_orbits_refine_locality_orbits() {
    let g = AbelianGroup::cyclic(6);
    let loc = orbit_representatives(&g, Reduction::Locality).unwrap().len();
    let cor = orbit_representatives(&g, Reduction::Correlation).unwrap().len();
    assert!(cor >= loc);
}

#[test]
#[ignore = "extended run"]
fn z9_row() {
    assert_eq!(row("Z9"), (2438, 6, 14, 2424));
}

#[test]
#[ignore = "extended run"]
fn z10_row() {
    assert_eq!(row("Z10"), (18736, 4, 22, 18714));
}

#[test]
#[ignore = "extended run"]
fn z3_squared_row() {
    assert_eq!(row("Z3xZ3"), (2240, 48, 944, 1296));
}

#[test]
#[ignore = "extended run"]
fn z10_locality_orbits() {
    let g = AbelianGroup::cyclic(10);
    assert_eq!(orbit_representatives(&g, Reduction::Locality).unwrap().len(), 2375);
}
