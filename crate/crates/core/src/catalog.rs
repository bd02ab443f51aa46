//! Built-in example systems used throughout the tests, the scenario
//! files and the docs.

use crate::error::{Error, Result};
use crate::exact::{rat, Rat};
use crate::geom::Point;
use crate::ifs::{Ifs, RationalSimilitude, Similitude};
use num_traits::Zero;

/// Four maps of ratio `rho` anchored at the corners of the unit square:
/// translations (0,0), (1-rho,0), (0,1-rho), (1-rho,1-rho). Strong
/// separation holds for rho < 1/2. At rho = 0.4 this is the product of
/// two Cantor sets with offsets {0, 0.6}; at rho = 0.5 the filled square.
pub fn four_corner(rho: f64) -> Result<Ifs> {
    let w = 1.0 - rho;
    let corners = [(0.0, 0.0), (w, 0.0), (0.0, w), (w, w)];
    let maps = corners
        .iter()
        .map(|&(x, y)| Similitude::new(rho, Point::new(x, y)))
        .collect::<Result<Vec<_>>>()?;
    Ifs::new(maps)
}

/// Exact-rational four-corner system with ratio `num/den`.
pub fn four_corner_rational(num: i64, den: i64) -> Result<Ifs> {
    let rho = rat(num, den);
    let w = rat(den - num, den);
    let zero = Rat::zero();
    let corners = [
        (zero.clone(), zero.clone()),
        (w.clone(), zero.clone()),
        (zero, w.clone()),
        (w.clone(), w),
    ];
    let maps = corners
        .iter()
        .map(|(x, y)| RationalSimilitude {
            ratio: rho.clone(),
            translation: (x.clone(), y.clone()),
        })
        .collect();
    Ifs::from_rational(maps)
}

/// Two maps of ratio 2/5 with translations (0,0) and (3/5,3/5): a
/// line-like set along the diagonal with a wide projection gap, the
/// smallest useful input for the rectangle construction.
pub fn two_map_diagonal() -> Ifs {
    let zero = Rat::zero();
    let maps = vec![
        RationalSimilitude {
            ratio: rat(2, 5),
            translation: (zero.clone(), zero),
        },
        RationalSimilitude {
            ratio: rat(2, 5),
            translation: (rat(3, 5), rat(3, 5)),
        },
    ];
    Ifs::from_rational(maps).expect("builtin system is valid")
}

/// Resolves a builtin name. `rho` applies to the four-corner family and
/// defaults per name; the exact pair `(num, den)` wins when given.
pub fn by_name(name: &str, rho: Option<f64>, rho_rational: Option<(i64, i64)>) -> Result<Ifs> {
    match name {
        "four-corner" => match rho_rational {
            Some((num, den)) => four_corner_rational(num, den),
            None => four_corner(rho.unwrap_or(0.3)),
        },
        "product-cantor" => match rho_rational {
            Some((num, den)) => four_corner_rational(num, den),
            None => four_corner(rho.unwrap_or(0.4)),
        },
        "square" => four_corner(rho.unwrap_or(0.5)),
        "two-map-diagonal" => Ok(two_map_diagonal()),
        other => Err(Error::Invalid(format!("unknown builtin system {other:?}"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn four_corner_dimensions() {
        assert!((four_corner(0.5).unwrap().dimension() - 2.0).abs() <= 1e-12);
        let s = four_corner(0.35).unwrap().dimension();
        assert!((s - 4.0_f64.ln() / (1.0 / 0.35_f64).ln()).abs() <= 1e-12);
    }

    #[test]
    fn rational_and_float_paths_agree() {
        let a = four_corner(0.3).unwrap();
        let b = four_corner_rational(3, 10).unwrap();
        assert!((a.dimension() - b.dimension()).abs() <= 1e-13);
        for (ma, mb) in a.maps().iter().zip(b.maps()) {
            assert_eq!(ma.ratio(), mb.ratio());
            assert_eq!(ma.translation(), mb.translation());
        }
    }

    #[test]
    fn unknown_builtin_is_an_error() {
        assert!(by_name("sierpinski", None, None).is_err());
    }
}
