//! Hilbert polynomials of small-dimensional subvarieties and the finite
//! difference identities used to eliminate them.
//!
//! A curve of degree `deg` and genus `g` has `h_n = n deg - g + 1`, a surface
//! `h_n = n^2 d / 2 - n HK / 2 + chi`, and a threefold
//! `h_n = n^3 H^3 / 6 + n^2 HHK / 4 + n gamma / 12 + chi`.

use crate::exactnum::{rat, ratio, Rational};
use crate::linsolve::{solve, SolveError};

fn n_q(n: i64) -> Rational {
    rat(n)
}

/// `(deg, g)` from `h_1` and `h_2` of a curve.
pub fn curve_from(h1: &Rational, h2: &Rational) -> (Rational, Rational) {
    let deg = h2 - h1;
    let genus = &deg - h1 + rat(1);
    (deg, genus)
}

pub fn curve_h(deg: &Rational, genus: &Rational, n: i64) -> Rational {
    n_q(n) * deg - genus + rat(1)
}

/// Degree, `H . K_S` and `chi(O_S)` of a surface fitted to `h_1, h_2, h_3`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SurfaceModel {
    pub degree: Rational,
    pub hk: Rational,
    pub chi: Rational,
}

impl SurfaceModel {
    pub fn fit(h: [&Rational; 3]) -> Result<Self, SolveError> {
        let rows: Vec<Vec<Rational>> = (1..=3).map(|n| vec![ratio(n * n, 2), ratio(-n, 2), rat(1)]).collect();
        let x = solve(&rows, &h.map(Rational::clone))?;
        let [degree, hk, chi]: [Rational; 3] = x.try_into().expect("three unknowns");
        Ok(SurfaceModel { degree, hk, chi })
    }

    pub fn h(&self, n: i64) -> Rational {
        ratio(n * n, 2) * &self.degree - ratio(n, 2) * &self.hk + &self.chi
    }
}

/// Coefficient data of a threefold Hilbert polynomial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CubicModel {
    pub hhh: Rational,
    pub hhk: Rational,
    pub gamma: Rational,
    pub chi: Rational,
}

impl CubicModel {
    pub fn fit(h: [&Rational; 4]) -> Result<Self, SolveError> {
        let rows: Vec<Vec<Rational>> = (1..=4)
            .map(|n| vec![ratio(n * n * n, 6), ratio(n * n, 4), ratio(n, 12), rat(1)])
            .collect();
        let x = solve(&rows, &h.map(Rational::clone))?;
        let [hhh, hhk, gamma, chi]: [Rational; 4] = x.try_into().expect("four unknowns");
        Ok(CubicModel { hhh, hhk, gamma, chi })
    }

    pub fn h(&self, n: i64) -> Rational {
        ratio(n * n * n, 6) * &self.hhh + ratio(n * n, 4) * &self.hhk + ratio(n, 12) * &self.gamma + &self.chi
    }

    /// Genus of a curve cut by two general members of `|H|`.
    pub fn section_genus(&self) -> Rational {
        (&self.hhk + rat(2) * &self.hhh) / rat(2) + rat(1)
    }
}

/// Third difference at 1: `h_4 - 3h_3 + 3h_2 - h_1 = H^3`.
pub fn rr1(h1: &Rational, h2: &Rational, h3: &Rational, h4: &Rational) -> Rational {
    h4 - rat(3) * h3 + rat(3) * h2 - h1
}

/// Second difference at 1: `h_3 - 2h_2 + h_1 = 2 H^3 + HHK / 2`.
pub fn rr2(h1: &Rational, h2: &Rational, h3: &Rational) -> Rational {
    h3 - rat(2) * h2 + h1
}

/// Third difference at 2: `h_5 - 3h_4 + 3h_3 - h_2 = H^3`.
pub fn rr5(h2: &Rational, h3: &Rational, h4: &Rational, h5: &Rational) -> Rational {
    h5 - rat(3) * h4 + rat(3) * h3 - h2
}

/// `HHK` from the second difference and `H^3`.
pub fn hhk_from(second_difference: &Rational, hhh: &Rational) -> Rational {
    rat(2) * (second_difference - rat(2) * hhh)
}

/// Largest `h_4` allowed by `HHK >= -2 - 2 H^3`.
pub fn h4_upper(h1: &Rational, h2: &Rational, h3: &Rational) -> Rational {
    rat(2) * h1 - rat(5) * h2 + rat(4) * h3 + rat(1)
}

/// Smallest `h_4` allowed by `H^3 >= 3`.
pub fn h4_lower(h1: &Rational, h2: &Rational, h3: &Rational) -> Rational {
    rat(3) + h1 - rat(3) * h2 + rat(3) * h3
}

/// `h_5 - 4h_4 + 6h_3 - 4h_2 + h_1`, zero for every polynomial of degree at
/// most 3.
pub fn fourth_difference(h: [&Rational; 5]) -> Rational {
    h[4] - rat(4) * h[3] + rat(6) * h[2] - rat(4) * h[1] + h[0]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn curve_and_surface_round_trip() {
        let (deg, g) = curve_from(&rat(6), &rat(21));
        assert_eq!((deg.clone(), g.clone()), (rat(15), rat(10)));
        assert_eq!(curve_h(&deg, &g, 5), rat(66));
        let s = SurfaceModel::fit([&rat(6), &rat(21), &rat(56)]).unwrap();
        assert_eq!(
            (s.degree.clone(), s.hk.clone(), s.chi.clone()),
            (rat(20), rat(30), rat(11))
        );
        assert_eq!((s.h(4), s.h(5)), (rat(111), rat(186)));
    }

    #[test]
    fn threefold_window_matches_the_inequalities() {
        let (h1, h2, h3) = (rat(6), rat(21), rat(56));
        for h4 in 100..140 {
            let h4 = rat(h4);
            let hhh = rr1(&h1, &h2, &h3, &h4);
            let hhk = hhk_from(&rr2(&h1, &h2, &h3), &hhh);
            assert_eq!(hhh >= rat(3), h4 >= h4_lower(&h1, &h2, &h3));
            assert_eq!(hhk >= rat(-2) - rat(2) * &hhh, h4 <= h4_upper(&h1, &h2, &h3));
        }
    }

    #[test]
    fn cubic_fit_of_a_known_threefold() {
        let m = CubicModel::fit([&rat(6), &rat(21), &rat(56), &rat(120)]).unwrap();
        assert_eq!(m.hhh, rat(9));
        assert_eq!(m.hhk, rat(4));
        assert_eq!(m.gamma, rat(18));
        assert_eq!(m.chi, rat(2));
        assert_eq!(m.h(5), rat(222));
        assert_eq!(m.section_genus(), rat(12));
    }
}
