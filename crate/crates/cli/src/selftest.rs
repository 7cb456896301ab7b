//! Built-in reproduction of the two worked examples.

use serde::Serialize;

use jordan_tensor::decomp::decompose;
use jordan_tensor::gens::ny_inverse;
use jordan_tensor::{build_generators, verify_all, Params};

#[derive(Clone, Debug, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub ok: bool,
    pub detail: String,
}

type Terms = Vec<((usize, usize), u32)>;

fn generator_terms(p: &Params, i: usize) -> Result<Terms, String> {
    let gens = build_generators(p).map_err(|e| e.to_string())?;
    let g = gens.get(i).ok_or_else(|| format!("no y_{i}"))?;
    Ok(g.vector.terms(p).into_iter().map(|(ij, c)| (ij, c.value())).collect())
}

fn check(name: &str, f: impl FnOnce() -> Result<String, String>) -> CheckResult {
    let (ok, detail) = match f() {
        Ok(d) => (true, d),
        Err(d) => (false, d),
    };
    CheckResult { name: name.into(), ok, detail }
}

fn lambda_check(p: u64, m: usize, n: usize, expected: &[usize]) -> Result<String, String> {
    let params = Params::new(p, m, n).map_err(|e| e.to_string())?;
    let dec = decompose(&params).map_err(|e| e.to_string())?;
    if dec.lambda() == expected {
        Ok(dec.to_string())
    } else {
        Err(format!("got {:?}", dec.lambda()))
    }
}

fn verify_check(p: u64, m: usize, n: usize) -> Result<String, String> {
    let params = Params::new(p, m, n).map_err(|e| e.to_string())?;
    let dec = decompose(&params).map_err(|e| e.to_string())?;
    let gens = build_generators(&params).map_err(|e| e.to_string())?;
    let report = verify_all(&params, &dec, &gens);
    if report.total_ok {
        Ok(format!("direct sum rank {:?}", report.direct_sum_rank))
    } else {
        Err(format!("{report:?}"))
    }
}

pub fn run() -> Vec<CheckResult> {
    let ex = || Params::new(7, 12, 13).expect("valid");
    let expect_terms = |i: usize, want: Terms| {
        move || {
            let got = generator_terms(&ex(), i)?;
            if got == want {
                Ok(format!("{got:?}"))
            } else {
                Err(format!("got {got:?}"))
            }
        }
    };
    vec![
        check("lambda p=5 m=6 n=9", || lambda_check(5, 6, 9, &[14, 10, 10, 10, 6, 4])),
        check("lambda p=7 m=12 n=13", || {
            lambda_check(7, 12, 13, &[21, 21, 21, 21, 16, 14, 12, 7, 7, 7, 7, 2])
        }),
        check("inverse of A_5 mod 7", || {
            let inv = ny_inverse(&ex(), 5).map_err(|e| e.to_string())?.inverse();
            let row = inv.to_rows()[0].clone();
            if row == [4, 3, 4, 3, 4] {
                Ok(format!("first row {row:?}"))
            } else {
                Err(format!("first row {row:?}"))
            }
        }),
        check(
            "y_5",
            expect_terms(5, vec![((8, 13), 6), ((9, 12), 5), ((10, 11), 5), ((11, 10), 6), ((12, 9), 4)]),
        ),
        check("y_8", expect_terms(8, vec![((5, 13), 1), ((12, 6), 6)])),
        check("y_9", expect_terms(9, vec![((4, 13), 6), ((11, 6), 1)])),
        check("y_10", expect_terms(10, vec![((3, 13), 1), ((10, 6), 6)])),
        check("y_11", expect_terms(11, vec![((2, 13), 6), ((9, 6), 1)])),
        check("verify p=5 m=6 n=9", || verify_check(5, 6, 9)),
        check("verify p=7 m=12 n=13", || verify_check(7, 12, 13)),
    ]
}

pub fn render(results: &[CheckResult]) -> String {
    let mut out: String = results
        .iter()
        .map(|r| format!("{}  {}: {}\n", if r.ok { "PASS" } else { "FAIL" }, r.name, r.detail))
        .collect();
    let failed = results.iter().filter(|r| !r.ok).count();
    out.push_str(&format!("selftest: {} passed, {failed} failed\n", results.len() - failed));
    out
}
