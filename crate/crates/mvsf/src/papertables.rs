//! Hard-coded reference tables of linearization coefficients as rational
//! functions of `n`: the seven scalar coefficients of the `l = 0` product
//! `Phi(3,t) Phi(4,t)` (indices `k = 1..7`) and the seven 2x2 matrices of the
//! `l = 1` product `Phi(2,t) Phi(6,t)` (indices `k = 3..9`), plus exact
//! comparison against computed expansions.
//!
//! The row-sum identities (scalar coefficients sum to 1; every row of the
//! summed matrices sums to 2) hold independently of the main computation and
//! catch transcription slips in the long integer coefficients.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::exactnum::{format_rat, rat, Rat};
use crate::expand::LinearizationExpansion;
use crate::polyalg::RatMatrix;

#[derive(Debug, Error)]
pub enum TableError {
    #[error("expansion is for (l={l}, i={i}, j={j}), table expects (l={tl}, i={ti}, j={tj})")]
    ShapeMismatch {
        l: u32,
        i: u32,
        j: u32,
        tl: u32,
        ti: u32,
        tj: u32,
    },
}

/// Integer-coefficient polynomial in `n`, ascending.
#[derive(Debug, Clone)]
pub struct NPoly(Vec<i64>);

impl NPoly {
    pub fn eval(&self, n: &Rat) -> Rat {
        let mut acc = Rat::from_integer(0.into());
        for c in self.0.iter().rev() {
            acc = acc * n + rat(*c);
        }
        acc
    }
}

/// A signed product of linear and polynomial factors over a like product,
/// with integer scale factors; all in-scope denominators are products of
/// `(n + positive integer)` and never vanish for `n >= 0`.
#[derive(Debug, Clone)]
pub struct RationalFunctionOfN {
    num_scale: i64,
    num_factors: Vec<(NPoly, u32)>,
    den_scale: i64,
    den_factors: Vec<(NPoly, u32)>,
}

impl RationalFunctionOfN {
    pub fn zero() -> Self {
        RationalFunctionOfN {
            num_scale: 0,
            num_factors: vec![],
            den_scale: 1,
            den_factors: vec![],
        }
    }

    pub fn eval(&self, n: &Rat) -> Rat {
        if self.num_scale == 0 {
            return Rat::from_integer(0.into());
        }
        let mut num = rat(self.num_scale);
        for (f, pow) in &self.num_factors {
            let v = f.eval(n);
            for _ in 0..*pow {
                num *= &v;
            }
        }
        let mut den = rat(self.den_scale);
        for (f, pow) in &self.den_factors {
            let v = f.eval(n);
            for _ in 0..*pow {
                den *= &v;
            }
        }
        num / den
    }
}

// builders for the table literals
fn lin(k: i64) -> (NPoly, u32) {
    (NPoly(vec![k, 1]), 1)
}

fn lin2(k: i64) -> (NPoly, u32) {
    (NPoly(vec![k, 1]), 2)
}

fn poly(coeffs: &[i64]) -> (NPoly, u32) {
    (NPoly(coeffs.to_vec()), 1)
}

fn rf(
    num_scale: i64,
    num_factors: Vec<(NPoly, u32)>,
    den_scale: i64,
    den_factors: Vec<(NPoly, u32)>,
) -> RationalFunctionOfN {
    RationalFunctionOfN {
        num_scale,
        num_factors,
        den_scale,
        den_factors,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TableId {
    /// Scalar coefficients `a_1..a_7` of `Phi(3,t) Phi(4,t)` at `l = 0`.
    L0I3J4,
    /// Matrix coefficients `A_3..A_9` of `Phi(2,t) Phi(6,t)` at `l = 1`.
    L1I2J6,
}

impl TableId {
    pub fn shape(&self) -> (u32, u32, u32) {
        match self {
            TableId::L0I3J4 => (0, 3, 4),
            TableId::L1I2J6 => (1, 2, 6),
        }
    }
}

/// The scalar table, indexed `k = 1..=7`.
pub fn table_l0() -> BTreeMap<u32, RationalFunctionOfN> {
    let mut t = BTreeMap::new();
    t.insert(1, rf(1, vec![lin(2), lin(3), lin(4)], 1, vec![lin(8), lin(9), lin(10)]));
    t.insert(
        2,
        rf(
            -6,
            vec![lin(-1), lin(3), lin(4), lin2(6)],
            1,
            vec![lin(7), lin(8), lin(9), lin(10), lin(11)],
        ),
    );
    t.insert(
        3,
        rf(
            3,
            vec![lin(4), lin(5), poly(&[162, 67, 52, 7])],
            1,
            vec![lin(7), lin(9), lin(10), lin(11), lin(12)],
        ),
    );
    t.insert(
        4,
        rf(
            -4,
            vec![lin(-1), lin(6), poly(&[648, 436, 123, 11])],
            1,
            vec![lin(8), lin(9), lin(11), lin(12), lin(13)],
        ),
    );
    t.insert(
        5,
        rf(
            3,
            vec![lin(5), lin(6), lin(7), poly(&[504, 162, 155, 19])],
            1,
            vec![lin(8), lin(9), lin(10), lin(11), lin(13), lin(14)],
        ),
    );
    t.insert(
        6,
        rf(
            -42,
            vec![lin(-1), lin(5), lin2(6), lin(7), lin(8)],
            1,
            vec![lin(9), lin(10), lin(11), lin(12), lin(13), lin(15)],
        ),
    );
    t.insert(
        7,
        rf(
            14,
            vec![lin(5), lin2(6), lin2(7), lin(8)],
            1,
            vec![lin(10), lin(11), lin(12), lin(13), lin(14), lin(15)],
        ),
    );
    t
}

/// The matrix table, indexed `k = 3..=9`, entries row-major 2x2.
pub fn table_l1() -> BTreeMap<u32, [RationalFunctionOfN; 4]> {
    let mut t = BTreeMap::new();
    t.insert(
        3,
        [
            RationalFunctionOfN::zero(),
            RationalFunctionOfN::zero(),
            RationalFunctionOfN::zero(),
            rf(
                16,
                vec![lin(4), lin(5), lin2(6), lin2(7)],
                1,
                vec![lin(11), lin(12), lin(13), lin(14), lin(15), lin(16)],
            ),
        ],
    );
    t.insert(
        4,
        [
            rf(15, vec![lin2(5), lin(6), lin(8)], 2, vec![lin(12), lin(13), lin(14), lin(15)]),
            rf(
                5,
                vec![lin(5), lin(6), poly(&[216, 55, 4])],
                6,
                vec![lin(13), lin(14), lin(15), lin(16)],
            ),
            rf(
                1,
                vec![lin(5), lin(6), lin(7), poly(&[724, 153, 8])],
                2,
                vec![lin(12), lin(13), lin(14), lin(15), lin(16)],
            ),
            rf(
                -5,
                vec![lin(6), lin(7), poly(&[-23252, 45137, 27202, 4665, 248])],
                12,
                vec![lin(11), lin(13), lin(14), lin(15), lin(16), lin(17)],
            ),
        ],
    );
    t.insert(
        5,
        [
            rf(
                -1,
                vec![lin(5), lin(6), poly(&[10368, 15732, 3284, 185])],
                6,
                vec![lin(7), lin(12), lin(14), lin(15), lin(16)],
            ),
            // The transcribed constant term -93460 fails the row-sum
            // identity at every n; -93560 is the unique quartic correction
            // interpolated from the exact expansion (verified at n = 0..6).
            rf(
                -1,
                vec![lin(5), poly(&[-93560, 7072, 11380, 1817, 85])],
                7,
                vec![lin(7), lin(13), lin(15), lin(16), lin(17)],
            ),
            rf(
                -1,
                vec![lin2(6), poly(&[-168628, 99767, 42068, 4735, 170])],
                12,
                vec![lin(7), lin(12), lin(14), lin(15), lin(16), lin(17)],
            ),
            rf(
                1,
                vec![poly(&[
                    132098688, 172290528, 163454544, 78090428, 19091004, 2480127, 163698, 4327,
                ])],
                14,
                vec![lin(7), lin(12), lin(13), lin(15), lin(16), lin(17), lin(18)],
            ),
        ],
    );
    t.insert(
        6,
        [
            rf(
                2,
                vec![poly(&[634422, 727621, 328884, 65284, 5832, 193])],
                7,
                vec![lin(8), lin(13), lin(14), lin(16), lin(17)],
            ),
            rf(
                1,
                vec![poly(&[1133640, 442336, 188570, 45764, 4729, 171])],
                8,
                vec![lin(8), lin(14), lin(15), lin(17), lin(18)],
            ),
            rf(
                1,
                vec![poly(&[
                    15755112, 10640548, 4245034, 959879, 116213, 7071, 171,
                ])],
                7,
                vec![lin(8), lin(13), lin(14), lin(16), lin(17), lin(18)],
            ),
            rf(
                -1,
                vec![poly(&[
                    -46794888, 129986220, 169428298, 85737209, 21066480, 2677678, 169934, 4269,
                ])],
                8,
                vec![lin(8), lin(13), lin(14), lin(15), lin(17), lin(18), lin(19)],
            ),
        ],
    );
    t.insert(
        7,
        [
            rf(
                -3,
                vec![lin(5), poly(&[76536, 129960, 36430, 3710, 129])],
                8,
                vec![lin(9), lin(14), lin(15), lin(16), lin(18)],
            ),
            rf(
                -1,
                vec![lin(5), lin(10), poly(&[-11268, 2274, 917, 57])],
                3,
                vec![lin(9), lin(15), lin(16), lin(17), lin(19)],
            ),
            rf(
                -3,
                vec![poly(&[
                    -4434696, 1465908, 1576582, 389955, 44489, 2505, 57,
                ])],
                8,
                vec![lin(9), lin(14), lin(15), lin(16), lin(18), lin(19)],
            ),
            rf(
                2,
                vec![lin(10), poly(&[
                    5004720, 5712396, 5197384, 2024521, 352571, 27979, 829,
                ])],
                3,
                vec![lin(9), lin(14), lin(15), lin(16), lin(17), lin(19), lin(20)],
            ),
        ],
    );
    t.insert(
        8,
        [
            rf(
                5,
                vec![lin(5), lin(6), poly(&[1920, 401, 21])],
                6,
                vec![lin(15), lin(16), lin(17), lin(18)],
            ),
            rf(
                15,
                vec![lin(5), lin(6), lin(8), lin(11)],
                2,
                vec![lin(16), lin(17), lin(18), lin(19)],
            ),
            rf(
                5,
                vec![lin(6), poly(&[96300, 36611, 4942, 329, 10])],
                6,
                vec![lin(15), lin(16), lin(17), lin(18), lin(20)],
            ),
            rf(
                -3,
                vec![lin(6), lin(11), poly(&[-59220, 129129, 67728, 9773, 430])],
                4,
                vec![lin(15), lin(16), lin(17), lin(18), lin(19), lin(21)],
            ),
        ],
    );
    t.insert(
        9,
        [
            RationalFunctionOfN::zero(),
            RationalFunctionOfN::zero(),
            rf(
                99,
                vec![lin(4), lin(6), lin(7), lin(10)],
                4,
                vec![lin(16), lin(17), lin(18), lin(19), lin(20)],
            ),
            rf(
                165,
                vec![lin(4), lin(6), lin(7), lin(8), lin(10), lin(12)],
                2,
                vec![lin(16), lin(17), lin(18), lin(19), lin(20), lin(21)],
            ),
        ],
    );
    t
}

/// Evaluate a table exactly at integer `n`, expansion-shaped.
pub fn eval_table(which: TableId, n: u32) -> BTreeMap<u32, RatMatrix> {
    let nr = rat(n as i64);
    match which {
        TableId::L0I3J4 => table_l0()
            .into_iter()
            .map(|(k, f)| (k, RatMatrix::new(1, 1, vec![f.eval(&nr)]).unwrap()))
            .collect(),
        TableId::L1I2J6 => table_l1()
            .into_iter()
            .map(|(k, fs)| {
                let entries = fs.iter().map(|f| f.eval(&nr)).collect();
                (k, RatMatrix::new(2, 2, entries).unwrap())
            })
            .collect(),
    }
}

/// One table-vs-computed mismatch, with both values.
#[derive(Debug, Clone)]
pub struct Mismatch {
    pub k: u32,
    pub row: usize,
    pub col: usize,
    pub computed: String,
    pub table: String,
}

#[derive(Debug, Clone)]
pub struct DiffReport {
    pub which: TableId,
    pub n: u32,
    pub mismatches: Vec<Mismatch>,
}

impl DiffReport {
    pub fn is_match(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// Entrywise bit-exact comparison of a computed expansion against a table.
pub fn compare_with_computed(
    which: TableId,
    n: u32,
    expansion: &LinearizationExpansion,
) -> Result<DiffReport, TableError> {
    let (tl, ti, tj) = which.shape();
    if expansion.l != tl || expansion.i != ti || expansion.j != tj || expansion.n != n {
        return Err(TableError::ShapeMismatch {
            l: expansion.l,
            i: expansion.i,
            j: expansion.j,
            tl,
            ti,
            tj,
        });
    }
    let table = eval_table(which, n);
    let mut mismatches = Vec::new();
    for (k, tm) in &table {
        let cm = &expansion.coeffs[k];
        for r in 0..tm.rows() {
            for c in 0..tm.cols() {
                if tm.at(r, c) != cm.at(r, c) {
                    mismatches.push(Mismatch {
                        k: *k,
                        row: r + 1,
                        col: c + 1,
                        computed: format_rat(cm.at(r, c)),
                        table: format_rat(tm.at(r, c)),
                    });
                }
            }
        }
    }
    Ok(DiffReport {
        which,
        n,
        mismatches,
    })
}
