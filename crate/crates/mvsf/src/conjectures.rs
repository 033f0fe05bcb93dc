//! Sign-pattern classification and machine checks of the linearization
//! conjectures: strictly alternating scalar coefficients at `l = 0, n > 1`,
//! the `n = 0` / `n = 1` positivity and zero facts, and the hook alternating
//! property of the matrix coefficients in the traditional index range.
//!
//! A hook `h` of a square sign grid is row `h` from the diagonal rightward
//! together with column `h` from the diagonal downward; the expected sign of
//! hook `h` in a grid of parity `p` is `(-1)^(h-1+p)`.
//!
//! Checkers report violations with witnesses instead of stopping at the
//! first failure; a zero entry where a strict sign is expected is a distinct
//! kind of witness, not a sign violation.

use serde::{Deserialize, Serialize};

use crate::exactnum::{format_rat, sign_of};
use crate::expand::{linearize, ExpandError, LinearizationExpansion};
use crate::polyalg::RatMatrix;
use crate::spherical::SphericalFamily;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Sign {
    Positive,
    Negative,
    Zero,
}

impl Sign {
    pub fn symbol(&self) -> char {
        match self {
            Sign::Positive => '+',
            Sign::Negative => '-',
            Sign::Zero => '0',
        }
    }
}

/// Entrywise exact signs of a rational matrix.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SignGrid {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<Sign>,
}

impl SignGrid {
    pub fn at(&self, r: usize, c: usize) -> Sign {
        self.entries[r * self.cols + c]
    }

    pub fn render(&self) -> String {
        (0..self.rows)
            .map(|r| {
                (0..self.cols)
                    .map(|c| self.at(r, c).symbol().to_string())
                    .collect::<Vec<_>>()
                    .join(" ")
            })
            .collect::<Vec<_>>()
            .join("\n")
    }
}

pub fn sign_grid(a: &RatMatrix) -> SignGrid {
    let mut entries = Vec::with_capacity(a.rows() * a.cols());
    for r in 0..a.rows() {
        for c in 0..a.cols() {
            entries.push(match sign_of(a.at(r, c)) {
                1 => Sign::Positive,
                -1 => Sign::Negative,
                _ => Sign::Zero,
            });
        }
    }
    SignGrid {
        rows: a.rows(),
        cols: a.cols(),
        entries,
    }
}

/// Expected hook grid: entry `(r,c)` (1-based) lies on hook `min(r,c)` and
/// carries sign `(-1)^(min(r,c)-1+parity)`.
pub fn hook_pattern(size: usize, parity: u8) -> SignGrid {
    let mut entries = Vec::with_capacity(size * size);
    for r in 1..=size {
        for c in 1..=size {
            let hook = r.min(c);
            let s = if (hook - 1 + parity as usize) % 2 == 0 {
                Sign::Positive
            } else {
                Sign::Negative
            };
            entries.push(s);
        }
    }
    SignGrid {
        rows: size,
        cols: size,
        entries,
    }
}

/// A single offending entry of a checked expansion.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub enum Witness {
    WrongSign {
        k: u32,
        row: usize,
        col: usize,
        value: String,
        expected: Sign,
    },
    ZeroEntry {
        k: u32,
        row: usize,
        col: usize,
    },
}

/// Verdict of the `l = 0` alternating-sign check for one product.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AltSignReport {
    pub n: u32,
    pub i: u32,
    pub j: u32,
    pub holds: bool,
    pub witnesses: Vec<Witness>,
}

/// Signs must strictly alternate starting positive at `k = j - i`.
/// Requires `l = 0`; meaningful for `n > 1` per the conjecture, but callable
/// at any `n` (that is how the `n = 1` zero phenomenon is exhibited).
pub fn check_alt_sign_l0(
    family: &SphericalFamily,
    i: u32,
    j: u32,
) -> Result<AltSignReport, ExpandError> {
    assert_eq!(family.ty().l, 0, "alternating-sign check is an l=0 statement");
    let exp = linearize(family, i.min(j), i.max(j))?;
    let mut witnesses = Vec::new();
    for (m, k) in (exp.kmin..=exp.kmax).enumerate() {
        let v = exp.coeffs[&k].at(0, 0);
        let expected = if m % 2 == 0 { Sign::Positive } else { Sign::Negative };
        match sign_of(v) {
            0 => witnesses.push(Witness::ZeroEntry { k, row: 1, col: 1 }),
            1 if expected == Sign::Positive => {}
            -1 if expected == Sign::Negative => {}
            _ => witnesses.push(Witness::WrongSign {
                k,
                row: 1,
                col: 1,
                value: format_rat(v),
                expected,
            }),
        }
    }
    Ok(AltSignReport {
        n: family.ty().n,
        i,
        j,
        holds: witnesses.is_empty(),
        witnesses,
    })
}

/// The `n = 0` / `n = 1` facts at `l = 0`: all coefficients strictly
/// positive at `n = 0`; even offsets strictly positive and odd offsets
/// exactly zero at `n = 1`.
pub fn check_n01_facts(
    family: &SphericalFamily,
    i: u32,
    j: u32,
) -> Result<AltSignReport, ExpandError> {
    let n = family.ty().n;
    assert_eq!(family.ty().l, 0, "n=0/n=1 facts are l=0 statements");
    assert!(n <= 1, "facts apply to n=0 and n=1 only");
    let exp = linearize(family, i.min(j), i.max(j))?;
    let mut witnesses = Vec::new();
    for (m, k) in (exp.kmin..=exp.kmax).enumerate() {
        let v = exp.coeffs[&k].at(0, 0);
        let s = sign_of(v);
        let ok = if n == 0 {
            s == 1
        } else if m % 2 == 0 {
            s == 1
        } else {
            s == 0
        };
        if !ok {
            if s == 0 {
                witnesses.push(Witness::ZeroEntry { k, row: 1, col: 1 });
            } else {
                witnesses.push(Witness::WrongSign {
                    k,
                    row: 1,
                    col: 1,
                    value: format_rat(v),
                    expected: Sign::Positive,
                });
            }
        }
    }
    Ok(AltSignReport {
        n,
        i,
        j,
        holds: witnesses.is_empty(),
        witnesses,
    })
}

/// Per-index record inside a [`HookReport`].
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct HookEntry {
    pub k: u32,
    pub in_traditional_range: bool,
    pub grid: SignGrid,
    /// Expected pattern; absent outside the traditional range.
    pub expected: Option<SignGrid>,
    pub matches: bool,
}

/// Full hook-alternating verdict for one product expansion.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct HookReport {
    pub l: u32,
    pub n: u32,
    pub i: u32,
    pub j: u32,
    pub entries: Vec<HookEntry>,
    pub holds: bool,
    pub witnesses: Vec<Witness>,
}

/// Check the hook alternating property over the traditional range
/// `k = j-i ..= j+i`: the matrix at `k` is compared against
/// `hook_pattern(l+1, (k-(j-i)) mod 2)`. Indices outside the traditional
/// range are included in the report but never in the verdict. Zero entries
/// inside the range are recorded as zero-entry witnesses and also excluded
/// from the verdict.
pub fn check_hook(
    family: &SphericalFamily,
    i: u32,
    j: u32,
) -> Result<HookReport, ExpandError> {
    assert!(i < j, "hook check requires i < j");
    let ty = family.ty();
    let size = ty.size();
    let exp = linearize(family, i, j)?;
    let trad_lo = j - i;
    let trad_hi = j + i;
    let mut entries = Vec::new();
    let mut witnesses = Vec::new();
    let mut holds = true;
    for k in exp.kmin..=exp.kmax {
        let grid = sign_grid(&exp.coeffs[&k]);
        let in_range = (trad_lo..=trad_hi).contains(&k);
        if !in_range {
            entries.push(HookEntry {
                k,
                in_traditional_range: false,
                grid,
                expected: None,
                matches: true,
            });
            continue;
        }
        let parity = ((k - trad_lo) % 2) as u8;
        let expected = hook_pattern(size, parity);
        let mut matches = true;
        for r in 0..size {
            for c in 0..size {
                match grid.at(r, c) {
                    Sign::Zero => {
                        witnesses.push(Witness::ZeroEntry {
                            k,
                            row: r + 1,
                            col: c + 1,
                        });
                    }
                    s if s != expected.at(r, c) => {
                        matches = false;
                        witnesses.push(Witness::WrongSign {
                            k,
                            row: r + 1,
                            col: c + 1,
                            value: format_rat(exp.coeffs[&k].at(r, c)),
                            expected: expected.at(r, c),
                        });
                    }
                    _ => {}
                }
            }
        }
        holds &= matches;
        entries.push(HookEntry {
            k,
            in_traditional_range: true,
            grid,
            expected: Some(expected),
            matches,
        });
    }
    Ok(HookReport {
        l: ty.l,
        n: ty.n,
        i,
        j,
        entries,
        holds,
        witnesses,
    })
}

/// The parity assigned to consecutive traditional-range indices must advance
/// by exactly one; restated here for report consumers.
pub fn parities_alternate(report: &HookReport) -> bool {
    let mut prev: Option<(u32, u8)> = None;
    for e in report.entries.iter().filter(|e| e.in_traditional_range) {
        let parity = match &e.expected {
            Some(g) => match g.at(0, 0) {
                Sign::Positive => 0u8,
                _ => 1u8,
            },
            None => continue,
        };
        if let Some((pk, pp)) = prev {
            if e.k != pk + 1 || parity == pp {
                return false;
            }
        }
        prev = Some((e.k, parity));
    }
    true
}

/// Convenience for report rendering and the l=0 degeneration check.
pub fn expansion_sign_grids(exp: &LinearizationExpansion) -> Vec<(u32, SignGrid)> {
    exp.coeffs.iter().map(|(k, a)| (*k, sign_grid(a))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rat;
    use crate::polyalg::RatMatrix;
    use crate::spherical::{build_family, SphericalType};

    fn fam(n: u32, l: u32, w_max: u32) -> SphericalFamily {
        build_family(SphericalType { n, l }, w_max).unwrap()
    }

    #[test]
    fn sign_grid_basics() {
        let z = RatMatrix::zeros(2, 2);
        assert!(sign_grid(&z).entries.iter().all(|s| *s == Sign::Zero));
        let m = RatMatrix::new(2, 2, vec![rat(3), rat(-1), rat(0), rat(7)]).unwrap();
        let g = sign_grid(&m);
        assert_eq!(g.at(0, 0), Sign::Positive);
        assert_eq!(g.at(0, 1), Sign::Negative);
        assert_eq!(g.at(1, 0), Sign::Zero);
        assert_eq!(g.at(1, 1), Sign::Positive);
    }

    #[test]
    fn hook_pattern_small() {
        let g = hook_pattern(2, 0);
        assert_eq!(g.entries, vec![Sign::Positive, Sign::Positive, Sign::Positive, Sign::Negative]);
        let g = hook_pattern(2, 1);
        assert_eq!(g.entries, vec![Sign::Negative, Sign::Negative, Sign::Negative, Sign::Positive]);
        let g = hook_pattern(3, 0);
        let want = [
            Sign::Positive, Sign::Positive, Sign::Positive,
            Sign::Positive, Sign::Negative, Sign::Negative,
            Sign::Positive, Sign::Negative, Sign::Positive,
        ];
        assert_eq!(g.entries, want);
    }

    #[test]
    fn hook_pattern_closed_form() {
        for size in 1..=5usize {
            for parity in 0..=1u8 {
                let g = hook_pattern(size, parity);
                for r in 1..=size {
                    for c in 1..=size {
                        let want = if (r.min(c) - 1 + parity as usize) % 2 == 0 {
                            Sign::Positive
                        } else {
                            Sign::Negative
                        };
                        assert_eq!(g.at(r - 1, c - 1), want);
                    }
                }
            }
        }
    }

    #[test]
    fn alt_sign_holds_at_n2() {
        let f = fam(2, 0, 8);
        let rep = check_alt_sign_l0(&f, 3, 4).unwrap();
        assert!(rep.holds, "witnesses: {:?}", rep.witnesses);
    }

    #[test]
    fn alt_sign_fails_at_n1_with_zero_witnesses() {
        let f = fam(1, 0, 8);
        let rep = check_alt_sign_l0(&f, 3, 4).unwrap();
        assert!(!rep.holds);
        let zero_ks: Vec<u32> = rep
            .witnesses
            .iter()
            .filter_map(|w| match w {
                Witness::ZeroEntry { k, .. } => Some(*k),
                _ => None,
            })
            .collect();
        assert_eq!(zero_ks, vec![2, 4, 6]);
    }

    #[test]
    fn alt_sign_vacuous_for_i0() {
        let f = fam(4, 0, 6);
        let rep = check_alt_sign_l0(&f, 0, 5).unwrap();
        assert!(rep.holds);
    }

    #[test]
    fn n01_facts() {
        let f0 = fam(0, 0, 8);
        assert!(check_n01_facts(&f0, 1, 1).unwrap().holds);
        assert!(check_n01_facts(&f0, 0, 5).unwrap().holds);
        let f1 = fam(1, 0, 8);
        assert!(check_n01_facts(&f1, 3, 4).unwrap().holds);
    }

    #[test]
    fn hook_example_at_n4() {
        // i=2, j=6 at a type where the pattern holds throughout
        let f = fam(4, 1, 9);
        let rep = check_hook(&f, 2, 6).unwrap();
        assert!(rep.holds, "witnesses: {:?}", rep.witnesses);
        assert!(parities_alternate(&rep));
        // out-of-range indices present but excluded
        let out: Vec<u32> = rep
            .entries
            .iter()
            .filter(|e| !e.in_traditional_range)
            .map(|e| e.k)
            .collect();
        assert_eq!(out, vec![3, 9]);
    }

    #[test]
    fn hook_degenerates_to_alt_sign_at_l0() {
        let f = fam(3, 0, 10);
        for (i, j) in [(1u32, 2u32), (2, 4), (3, 4)] {
            let hook = check_hook(&f, i, j).unwrap();
            let alt = check_alt_sign_l0(&f, i, j).unwrap();
            assert_eq!(hook.holds, alt.holds);
        }
    }

    #[test]
    fn hook_reports_are_deterministic() {
        let f = fam(4, 1, 9);
        let a = serde_json::to_string(&check_hook(&f, 2, 6).unwrap()).unwrap();
        let b = serde_json::to_string(&check_hook(&f, 2, 6).unwrap()).unwrap();
        assert_eq!(a, b);
    }
}
