use rayon::prelude::*;

use crate::constructions::ProofModel;
use crate::error::{Error, Result};
use crate::field::Fp;
use crate::limits::Limits;

/// Grid points handled per parallel task; fixed so results never depend on
/// the pool size.
const CHUNK: u64 = 1 << 12;

/// How many non-vanishing points a census keeps.
const KEPT_POINTS: usize = 16;

/// `g'(b) = prod_{a in B, a != b} (b - a)`, the derivative at `b` of the
/// vanishing polynomial of `B`.
pub fn g_prime(row: &[Fp], b: Fp) -> Result<Fp> {
    if !row.contains(&b) {
        return Err(Error::NotAMember);
    }
    Ok(row
        .iter()
        .filter(|&&a| a != b)
        .fold(b.prime().one(), |acc, &a| acc * (b - a)))
}

fn checked_grid_size(model: &ProofModel, limits: &Limits) -> Result<u64> {
    let size = model.grid_size();
    if size > limits.max_grid as u128 {
        return Err(Error::GridTooLarge {
            size,
            limit: limits.max_grid,
        });
    }
    Ok(size as u64)
}

/// Odometer over the grid, last coordinate fastest.
struct Cursor<'a> {
    grid: &'a [Vec<Fp>],
    digits: Vec<usize>,
    point: Vec<Fp>,
}

impl<'a> Cursor<'a> {
    fn at(grid: &'a [Vec<Fp>], mut index: u64) -> Self {
        let mut digits = vec![0; grid.len()];
        for (i, row) in grid.iter().enumerate().rev() {
            digits[i] = (index % row.len() as u64) as usize;
            index /= row.len() as u64;
        }
        let point = digits.iter().zip(grid).map(|(&k, row)| row[k]).collect();
        Cursor { grid, digits, point }
    }

    fn advance(&mut self) {
        for i in (0..self.grid.len()).rev() {
            self.digits[i] += 1;
            if self.digits[i] < self.grid[i].len() {
                self.point[i] = self.grid[i][self.digits[i]];
                return;
            }
            self.digits[i] = 0;
            self.point[i] = self.grid[i][0];
        }
    }
}

fn chunks(size: u64) -> impl IndexedParallelIterator<Item = (u64, u64)> {
    (0..size.div_ceil(CHUNK) as usize)
        .into_par_iter()
        .map(move |c| (c as u64 * CHUNK, ((c as u64 + 1) * CHUNK).min(size)))
}

/// Coefficient of `prod X_i^{monomial[i]}` by the coefficient formula,
/// summing `P(b) / prod g_i'(b_i)` over the whole grid.
pub fn coeff_full_sum(model: &ProofModel, limits: &Limits) -> Result<Fp> {
    let size = checked_grid_size(model, limits)?;
    let p = model.prime();
    let grid = model.grid();
    let inv_g: Vec<Vec<Fp>> = grid
        .iter()
        .map(|row| {
            row.iter()
                .map(|&b| g_prime(row, b)?.inv())
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;
    let total = chunks(size)
        .map(|(start, end)| {
            let mut cursor = Cursor::at(grid, start);
            let mut acc = p.zero();
            for _ in start..end {
                let v = model.eval(&cursor.point);
                if !v.is_zero() {
                    let w = cursor
                        .digits
                        .iter()
                        .zip(&inv_g)
                        .fold(v, |w, (&k, inv)| w * inv[k]);
                    acc += w;
                }
                cursor.advance();
            }
            acc
        })
        .reduce(|| p.zero(), |a, b| a + b);
    Ok(total)
}

/// Result of scanning a grid for points where the model does not vanish.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct Census {
    pub count: u64,
    /// The first few non-vanishing points in enumeration order.
    pub points: Vec<Vec<Fp>>,
}

pub fn nonzero_points(model: &ProofModel, limits: &Limits) -> Result<Census> {
    let size = checked_grid_size(model, limits)?;
    let grid = model.grid();
    let parts: Vec<(u64, Vec<Vec<Fp>>)> = chunks(size)
        .map(|(start, end)| {
            let mut cursor = Cursor::at(grid, start);
            let mut count = 0;
            let mut kept = Vec::new();
            for _ in start..end {
                if !model.eval(&cursor.point).is_zero() {
                    count += 1;
                    if kept.len() < KEPT_POINTS {
                        kept.push(cursor.point.clone());
                    }
                }
                cursor.advance();
            }
            (count, kept)
        })
        .collect();
    let mut census = Census {
        count: 0,
        points: Vec::new(),
    };
    for (count, kept) in parts {
        census.count += count;
        let room = KEPT_POINTS - census.points.len();
        census.points.extend(kept.into_iter().take(room));
    }
    Ok(census)
}

/// Whether [`coeff_single_point`] re-checks that `bstar` is the only
/// non-vanishing grid point.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Uniqueness {
    /// Scan the grid when it is within `max_grid`; skip otherwise.
    Scan,
    Trust,
}

/// `P(b*) / prod g_i'(b*_i)`: the coefficient formula collapsed to its one
/// non-vanishing term.
pub fn coeff_single_point(model: &ProofModel, uniqueness: Uniqueness, limits: &Limits) -> Result<Fp> {
    let bstar = model
        .bstar()
        .ok_or_else(|| Error::BadParams("model has no distinguished point".into()))?;
    let value = model.eval(bstar);
    if value.is_zero() {
        return Err(Error::ZeroAtBstar);
    }
    if uniqueness == Uniqueness::Scan && model.grid_size() <= limits.max_grid as u128 {
        let census = nonzero_points(model, limits)?;
        if census.count != 1 {
            return Err(Error::NotUnique(census.count));
        }
    }
    model
        .grid()
        .iter()
        .zip(bstar)
        .try_fold(value, |acc, (row, &b)| Ok(acc * g_prime(row, b)?.inv()?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{cd_model, dsh_model, main_model};
    use crate::field::Prime;

    fn prime(p: u64) -> Prime {
        Prime::new(p).unwrap()
    }

    #[test]
    fn g_prime_examples() {
        let p = prime(7);
        let row = [p.elem(-2), p.elem(-1)];
        assert_eq!(g_prime(&row, p.elem(-1)).unwrap().value(), 1);
        let row = [p.elem(-2), p.elem(-1), p.elem(1), p.elem(2)];
        assert_eq!(g_prime(&row, p.elem(2)).unwrap().value(), 5);
        assert_eq!(g_prime(&[p.elem(3)], p.elem(3)).unwrap().value(), 1);
        assert_eq!(g_prime(&row, p.elem(3)), Err(Error::NotAMember));
    }

    #[test]
    fn full_sum_examples() {
        let lim = Limits::default();
        assert_eq!(coeff_full_sum(&cd_model(2, 2, prime(7)).unwrap(), &lim).unwrap().value(), 2);
        assert_eq!(coeff_full_sum(&dsh_model(3, 2, prime(11)).unwrap(), &lim).unwrap().value(), 1);
        assert_eq!(coeff_full_sum(&main_model(2, 1, prime(7)).unwrap(), &lim).unwrap().value(), 2);
    }

    #[test]
    fn single_point_examples() {
        let lim = Limits::default();
        let sp = |m| coeff_single_point(&m, Uniqueness::Scan, &lim).unwrap().value();
        assert_eq!(sp(main_model(2, 1, prime(7)).unwrap()), 2);
        assert_eq!(sp(dsh_model(3, 2, prime(11)).unwrap()), 1);
        assert_eq!(sp(cd_model(2, 2, prime(7)).unwrap()), 2);
    }

    #[test]
    fn census_examples() {
        let lim = Limits::default();
        let m = main_model(2, 1, prime(7)).unwrap();
        let census = nonzero_points(&m, &lim).unwrap();
        assert_eq!(census.count, 1);
        assert_eq!(census.points, vec![m.bstar().unwrap().to_vec()]);
        assert_eq!(nonzero_points(&dsh_model(3, 2, prime(11)).unwrap(), &lim).unwrap().count, 1);
    }

    #[test]
    fn grid_guard() {
        let lim = Limits {
            max_grid: 7,
            ..Limits::default()
        };
        let m = main_model(2, 1, prime(7)).unwrap();
        assert!(matches!(coeff_full_sum(&m, &lim), Err(Error::GridTooLarge { size: 8, limit: 7 })));
        // single point skips the scan instead of failing
        assert_eq!(coeff_single_point(&m, Uniqueness::Scan, &lim).unwrap().value(), 2);
    }

    #[test]
    fn parallel_sum_is_pool_independent() {
        let m = main_model(5, 2, prime(11)).unwrap();
        let lim = Limits::default();
        let run = |threads| {
            rayon::ThreadPoolBuilder::new()
                .num_threads(threads)
                .build()
                .unwrap()
                .install(|| (coeff_full_sum(&m, &lim).unwrap(), nonzero_points(&m, &lim).unwrap()))
        };
        let base = run(1);
        assert_eq!(run(3), base);
        assert_eq!(run(8), base);
    }
}
