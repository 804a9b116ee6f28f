use num_bigint::BigInt;
use num_rational::BigRational;

use crate::dirichlet::DirichletSeries;
use crate::error::{Error, Result};
use crate::lattice::Lattice;
use crate::zeta::zeta_series;

pub const FIXTURE_NAMES: [&str; 2] = ["ten_point", "eleven_point"];

const TEN_POINT: &[(usize, usize)] = &[
    (0, 1),
    (0, 2),
    (0, 5),
    (2, 3),
    (3, 4),
    (4, 8),
    (8, 9),
    (5, 6),
    (5, 7),
    (1, 9),
    (6, 9),
    (7, 9),
];

const ELEVEN_POINT: &[(usize, usize)] = &[
    (0, 1),
    (0, 3),
    (1, 2),
    (2, 8),
    (2, 9),
    (2, 4),
    (3, 4),
    (4, 5),
    (4, 6),
    (4, 7),
    (8, 10),
    (9, 10),
    (5, 10),
    (6, 10),
    (7, 10),
];

fn expected(name: &str) -> DirichletSeries {
    let terms: [(i64, i64); 3] = match name {
        "ten_point" => [(1, 1), (2, -1), (4, -2)],
        _ => [(1, 1), (2, -3), (4, 2)],
    };
    DirichletSeries::from_terms(
        terms.map(|(q, c)| (BigRational::from_integer(q.into()), BigInt::from(c))),
    )
    .expect("bases are at least 1")
}

/// The two weakly but not strongly coset-like examples, checked against
/// their known series on load.
pub fn load_fixture(name: &str) -> Result<Lattice> {
    let (n, covers) = match name {
        "ten_point" => (10, TEN_POINT),
        "eleven_point" => (11, ELEVEN_POINT),
        _ => return Err(Error::UnknownFixture(name.to_string())),
    };
    let l = Lattice::from_covers(n, covers)?;
    let report = zeta_series(&l);
    if report.series != expected(name) || report.j_count != 8 || !report.j_below.contains(&3) {
        return Err(Error::VerificationFailed(format!(
            "fixture {name} has series {}",
            report.series.pretty()
        )));
    }
    Ok(l)
}
