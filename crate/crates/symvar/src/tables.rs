//! Machine-checked classification tables: the type-A involution table and
//! the full simple-group table with restricted systems and dual groups.

use crate::dualgroup::{dual_group_datum, Table2Row};
use crate::involution::{
    build_from_spec, restricted_system, DiagramInvolution, InvolutionDatum, InvolutionSpec,
};
use crate::par::par_map;
use serde::{Deserialize, Serialize};

/// Split/quasisplit flag of a validated involution.
pub fn split_flag(d: &InvolutionDatum) -> &'static str {
    if d.split {
        "split"
    } else if d.quasisplit {
        "quasisplit"
    } else {
        "-"
    }
}

// ---- type-A table ----------------------------------------------------------

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct Table1Row {
    pub n: usize,
    pub involution: String,
    pub fixed_subgroup: String,
    pub real_form: String,
    pub flag: String,
    pub restricted_type: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct Table1Report {
    pub row: Table1Row,
    pub computed_fixed_subgroup: String,
    pub computed_flag: String,
    pub computed_restricted_type: String,
    pub status: String,
    pub mismatches: Vec<String>,
}

fn table1_spec(n: usize, involution: &str) -> InvolutionSpec {
    let base_type = format!("A{}", n - 1);
    if involution == "theta_0" {
        InvolutionSpec {
            base_type,
            kind: "transpose_inverse".into(),
            p: None,
            q: None,
            matrix: None,
            black_nodes: None,
            diagram_involution: None,
            sign_count: None,
        }
    } else if involution == "theta_1" {
        InvolutionSpec {
            base_type,
            kind: "symplectic".into(),
            p: None,
            q: None,
            matrix: None,
            black_nodes: None,
            diagram_involution: None,
            sign_count: None,
        }
    } else {
        // "theta_{p,q}"
        let inner = involution
            .trim_start_matches("theta_{")
            .trim_end_matches('}');
        let mut parts = inner.split(',');
        let p: usize = parts.next().unwrap().parse().unwrap();
        let q: usize = parts.next().unwrap().parse().unwrap();
        InvolutionSpec {
            base_type,
            kind: "pq".into(),
            p: Some(p),
            q: Some(q),
            matrix: None,
            black_nodes: None,
            diagram_involution: None,
            sign_count: None,
        }
    }
}

/// Catalogue rows for the type-A table, 3 <= n <= max_n.
pub fn table1_rows(max_n: usize) -> Vec<Table1Row> {
    let mut rows = Vec::new();
    for n in 3..=max_n {
        for p in 1..=n / 2 {
            let q = n - p;
            rows.push(Table1Row {
                n,
                involution: format!("theta_{{{p},{q}}}"),
                fixed_subgroup: format!("S(GL{p} x GL{q})"),
                real_form: format!("SU({p},{q})"),
                flag: if q == p || q == p + 1 { "quasisplit".into() } else { "-".into() },
                restricted_type: if p == q { format!("C{p}") } else { format!("BC{p}") },
            });
        }
        rows.push(Table1Row {
            n,
            involution: "theta_0".into(),
            fixed_subgroup: format!("SO{n}"),
            real_form: format!("SL{n}(R)"),
            flag: "split".into(),
            restricted_type: format!("A{}", n - 1),
        });
        if n % 2 == 0 {
            rows.push(Table1Row {
                n,
                involution: "theta_1".into(),
                fixed_subgroup: format!("Sp{n}"),
                real_form: format!("SU*({n})"),
                flag: "-".into(),
                restricted_type: format!("A{}", n / 2 - 1),
            });
        }
    }
    rows
}

pub fn check_table1_row(row: &Table1Row) -> Table1Report {
    let spec = table1_spec(row.n, &row.involution);
    let computed_fixed = match spec.kind.as_str() {
        "pq" => format!("S(GL{} x GL{})", spec.p.unwrap(), spec.q.unwrap()),
        "transpose_inverse" => format!("SO{}", row.n),
        "symplectic" => format!("Sp{}", row.n),
        _ => "?".into(),
    };
    match build_from_spec(&spec).and_then(|d| restricted_system(&d)) {
        Ok(rd) => {
            let flag = split_flag(&rd.datum).to_string();
            let rt = rd.restricted_label.clone();
            let mut mismatches = Vec::new();
            if computed_fixed != row.fixed_subgroup {
                mismatches.push(format!(
                    "fixed_subgroup: computed {computed_fixed}, expected {}",
                    row.fixed_subgroup
                ));
            }
            if flag != row.flag {
                mismatches.push(format!("flag: computed {flag}, expected {}", row.flag));
            }
            if rt != row.restricted_type {
                mismatches.push(format!(
                    "restricted_type: computed {rt}, expected {}",
                    row.restricted_type
                ));
            }
            let status = if mismatches.is_empty() { "match" } else { "mismatch" };
            Table1Report {
                row: row.clone(),
                computed_fixed_subgroup: computed_fixed,
                computed_flag: flag,
                computed_restricted_type: rt,
                status: status.into(),
                mismatches,
            }
        }
        Err(e) => Table1Report {
            row: row.clone(),
            computed_fixed_subgroup: computed_fixed,
            computed_flag: "-".into(),
            computed_restricted_type: "-".into(),
            status: "unconstructed".into(),
            mismatches: vec![e.to_string()],
        },
    }
}

pub fn run_table1(max_n: usize) -> Vec<Table1Report> {
    par_map(table1_rows(max_n), |row| check_table1_row(&row))
}

// ---- full simple-group table ------------------------------------------------

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct ComputedColumns {
    pub delta_theta: String,
    pub delta_theta_red: String,
    pub delta_variety: String,
    pub dual_algebra: String,
    pub flag: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct Table2Instance {
    pub row: String,
    pub params: String,
    pub spec: InvolutionSpec,
    pub fixture: Table2Row,
    pub expected: ComputedColumns,
}

#[derive(Debug, Clone, Serialize)]
pub struct Table2Report {
    pub row: String,
    pub params: String,
    pub status: String,
    pub computed: Option<ComputedColumns>,
    pub expected: ComputedColumns,
    pub mismatches: Vec<String>,
    pub little_weyl_order: Option<String>,
    pub little_weyl_method: Option<String>,
}

fn satake_spec(base: &str, black: Vec<usize>, tau: DiagramInvolution) -> InvolutionSpec {
    InvolutionSpec {
        base_type: base.into(),
        kind: "satake".into(),
        p: None,
        q: None,
        matrix: None,
        black_nodes: Some(black),
        diagram_involution: Some(tau),
        sign_count: None,
    }
}

fn signs_spec(base: &str, p: usize) -> InvolutionSpec {
    InvolutionSpec {
        base_type: base.into(),
        kind: "signs".into(),
        p: None,
        q: None,
        matrix: None,
        black_nodes: None,
        diagram_involution: None,
        sign_count: Some(p),
    }
}

fn split_spec(base: &str) -> InvolutionSpec {
    InvolutionSpec {
        base_type: base.into(),
        kind: "transpose_inverse".into(),
        p: None,
        q: None,
        matrix: None,
        black_nodes: None,
        diagram_involution: None,
        sign_count: None,
    }
}

fn pq_spec(n: usize, p: usize, q: usize) -> InvolutionSpec {
    InvolutionSpec {
        base_type: format!("A{}", n - 1),
        kind: "pq".into(),
        p: Some(p),
        q: Some(q),
        matrix: None,
        black_nodes: None,
        diagram_involution: None,
        sign_count: None,
    }
}

#[allow(clippy::too_many_arguments)]
/// Canonical name at the degenerate small ranks where the series coincide.
fn canonical_type(t: &str) -> String {
    match t {
        "B1" | "C1" => "A1".into(),
        _ => t.into(),
    }
}

fn canonical_algebra(a: &str) -> String {
    match a {
        "sp2" | "so3" => "sl2".into(),
        _ => a.into(),
    }
}

fn instance(
    row: &str,
    params: String,
    spec: InvolutionSpec,
    fixture: Table2Row,
) -> Table2Instance {
    let expected = ComputedColumns {
        delta_theta: canonical_type(&fixture.delta_theta_type),
        delta_theta_red: canonical_type(&fixture.delta_theta_red_type),
        delta_variety: canonical_type(&fixture.delta_variety_type),
        dual_algebra: canonical_algebra(&fixture.dual_variety_algebra_type),
        flag: flag_of_notes(&fixture.notes),
    };
    Table2Instance { row: row.into(), params, spec, fixture, expected }
}

fn flag_of_notes(notes: &str) -> String {
    if notes.contains("split") && !notes.contains("quasisplit") {
        "split".into()
    } else if notes.contains("quasisplit") {
        "quasisplit".into()
    } else {
        "-".into()
    }
}

#[allow(clippy::too_many_arguments)]
fn row_fixture(
    label: &str,
    g: String,
    g_dual: String,
    real: String,
    fixed: String,
    dt: String,
    dtr: String,
    dv: String,
    dual: String,
    notes: String,
) -> Table2Row {
    Table2Row {
        label: label.into(),
        g_type: g,
        g_dual_type: g_dual,
        real_form: real,
        fixed_subalgebra_type: fixed,
        delta_theta_type: dt,
        delta_theta_red_type: dtr,
        delta_variety_type: dv,
        dual_variety_algebra_type: dual,
        notes,
    }
}

/// Catalogue instances at Lie rank <= max_rank. The classical families are
/// instantiated away from the degenerate small-rank coincidences.
pub fn table2_instances(max_rank: usize) -> Vec<Table2Instance> {
    let mut out = Vec::new();
    let r = max_rank;
    // split type A
    for n in 2..=r + 1 {
        out.push(instance(
            "AI",
            format!("n={n}"),
            split_spec(&format!("A{}", n - 1)),
            row_fixture(
                "AI",
                format!("sl{n}"),
                format!("sl{n}"),
                format!("sl{n}(R)"),
                format!("so{n}"),
                format!("A{}", n - 1),
                format!("A{}", n - 1),
                format!("A{}", n - 1),
                format!("sl{n}"),
                "split".into(),
            ),
        ));
    }
    // paired type A with symplectic fixed points
    for m in 2..=(r + 1) / 2 {
        let n2 = 2 * m;
        out.push(instance(
            "AII",
            format!("n={m}"),
            InvolutionSpec {
                base_type: format!("A{}", n2 - 1),
                kind: "symplectic".into(),
                p: None,
                q: None,
                matrix: None,
                black_nodes: None,
                diagram_involution: None,
                sign_count: None,
            },
            row_fixture(
                "AII",
                format!("sl{n2}"),
                format!("sl{n2}"),
                format!("su*({n2})"),
                format!("sp{n2}"),
                format!("A{}", m - 1),
                format!("A{}", m - 1),
                format!("A{}", m - 1),
                format!("sl{m}"),
                "".into(),
            ),
        ));
    }
    // signature rows of type A, p < q
    for p in 1..=r {
        for q in p + 1..=r + 1 - p {
            let n = p + q;
            if n > r + 1 {
                continue;
            }
            let notes =
                if q == p + 1 { "p+q=n, p<q, quasisplit (q=p+1)".to_string() } else { "p+q=n, p<q".into() };
            out.push(instance(
                "AIII",
                format!("p={p},q={q}"),
                pq_spec(n, p, q),
                row_fixture(
                    "AIII",
                    format!("sl{n}"),
                    format!("sl{n}"),
                    format!("su({p},{q})"),
                    format!("s(gl{p}+gl{q})"),
                    format!("BC{p}"),
                    format!("B{p}"),
                    format!("B{p}"),
                    format!("sp{}", 2 * p),
                    notes,
                ),
            ));
        }
    }
    // balanced signature rows of type A
    for n in 2..=(r + 1) / 2 {
        let n2 = 2 * n;
        out.push(instance(
            "AIV",
            format!("n={n}"),
            pq_spec(n2, n, n),
            row_fixture(
                "AIV",
                format!("sl{n2}"),
                format!("sl{n2}"),
                format!("su({n},{n})"),
                format!("s(gl{n}+gl{n})"),
                format!("C{n}"),
                format!("C{n}"),
                format!("B{n}"),
                format!("sp{n2}"),
                "quasisplit, red != variety".into(),
            ),
        ));
    }
    // odd orthogonal signatures
    for n in 3..=r {
        for p in 2..n {
            let q = 2 * n - p;
            out.push(instance(
                "BI",
                format!("n={n},p={p}"),
                signs_spec(&format!("B{n}"), p),
                row_fixture(
                    "BI",
                    format!("so{}", 2 * n + 1),
                    format!("sp{}", 2 * n),
                    format!("so({p},{})", q + 1),
                    format!("so{p}+so{q}"),
                    format!("B{p}"),
                    format!("B{p}"),
                    format!("B{p}"),
                    format!("sp{}", 2 * p),
                    "p+q=2n, p<q".into(),
                ),
            ));
        }
    }
    for n in 2..=r {
        out.push(instance(
            "BII",
            format!("n={n}"),
            split_spec(&format!("B{n}")),
            row_fixture(
                "BII",
                format!("so{}", 2 * n + 1),
                format!("sp{}", 2 * n),
                format!("so({n},{})", n + 1),
                format!("so{n}+so{}", n + 1),
                format!("B{n}"),
                format!("B{n}"),
                format!("B{n}"),
                format!("sp{}", 2 * n),
                "split".into(),
            ),
        ));
    }
    // split symplectic
    for n in 2..=r {
        out.push(instance(
            "CI",
            format!("n={n}"),
            split_spec(&format!("C{n}")),
            row_fixture(
                "CI",
                format!("sp{}", 2 * n),
                format!("so{}", 2 * n + 1),
                format!("sp{}(R)", 2 * n),
                format!("gl{n}"),
                format!("C{n}"),
                format!("C{n}"),
                format!("C{n}"),
                format!("so{}", 2 * n + 1),
                "split".into(),
            ),
        ));
    }
    // symplectic signatures, p < q
    for p in 1..=r {
        for q in p + 1..=r - p {
            let n = p + q;
            let mut black: Vec<usize> = (0..p).map(|k| 2 * k).collect();
            black.extend(2 * p..n);
            out.push(instance(
                "CII",
                format!("p={p},q={q}"),
                satake_spec(&format!("C{n}"), black, DiagramInvolution::Identity),
                row_fixture(
                    "CII",
                    format!("sp{}", 2 * n),
                    format!("so{}", 2 * n + 1),
                    format!("sp({},{})", 2 * p, 2 * q),
                    format!("sp{}+sp{}", 2 * p, 2 * q),
                    format!("BC{p}"),
                    format!("B{p}"),
                    format!("B{p}"),
                    format!("sp{}", 2 * p),
                    "p+q=n, p<q".into(),
                ),
            ));
        }
    }
    // balanced symplectic signatures
    for n in 2..=r / 2 {
        let rank = 2 * n;
        let black: Vec<usize> = (0..n).map(|k| 2 * k).collect();
        out.push(instance(
            "CII'",
            format!("n={n}"),
            satake_spec(&format!("C{rank}"), black, DiagramInvolution::Identity),
            row_fixture(
                "CII'",
                format!("sp{}", 4 * n),
                format!("so{}", 4 * n + 1),
                format!("sp({},{})", 2 * n, 2 * n),
                format!("sp{}+sp{}", 2 * n, 2 * n),
                format!("C{n}"),
                format!("C{n}"),
                format!("B{n}"),
                format!("sp{}", 2 * n),
                "red != variety".into(),
            ),
        ));
    }
    // split even orthogonal
    for n in 4..=r {
        out.push(instance(
            "DI",
            format!("n={n}"),
            split_spec(&format!("D{n}")),
            row_fixture(
                "DI",
                format!("so{}", 2 * n),
                format!("so{}", 2 * n),
                format!("so({n},{n})"),
                format!("so{n}+so{n}"),
                format!("D{n}"),
                format!("D{n}"),
                format!("D{n}"),
                format!("so{}", 2 * n),
                "split".into(),
            ),
        ));
    }
    // even orthogonal signatures
    for n in 4..=r {
        for p in 2..n {
            let q = 2 * n - p;
            let notes = if q == p + 2 {
                "p+q=2n, p<q, quasisplit (q=p+2), red != variety".to_string()
            } else {
                "p+q=2n, p<q, red != variety".into()
            };
            out.push(instance(
                "DII",
                format!("n={n},p={p}"),
                signs_spec(&format!("D{n}"), p),
                row_fixture(
                    "DII",
                    format!("so{}", 2 * n),
                    format!("so{}", 2 * n),
                    format!("so({p},{q})"),
                    format!("so{p}+so{q}"),
                    format!("B{p}"),
                    format!("B{p}"),
                    format!("C{p}"),
                    format!("so{}", 2 * p + 1),
                    notes,
                ),
            ));
        }
    }
    // quaternionic even orthogonal, odd rank
    for m in 2..=(r - 1) / 2 {
        let n = 2 * m + 1;
        let black: Vec<usize> = (0..m).map(|k| 2 * k).collect();
        out.push(instance(
            "DIII",
            format!("n={n} (odd)"),
            satake_spec(&format!("D{n}"), black, DiagramInvolution::Flip),
            row_fixture(
                "DIII",
                format!("so{}", 2 * n),
                format!("so{}", 2 * n),
                format!("so*({})", 2 * n),
                format!("gl{n}"),
                format!("BC{m}"),
                format!("B{m}"),
                format!("B{m}"),
                format!("sp{}", n - 1),
                "n odd".into(),
            ),
        ));
    }
    // quaternionic even orthogonal, even rank
    for m in 2..=r / 2 {
        let n = 2 * m;
        let mut black: Vec<usize> = (0..m.saturating_sub(1)).map(|k| 2 * k).collect();
        black.push(n - 1);
        out.push(instance(
            "DIII'",
            format!("n={n} (even)"),
            satake_spec(&format!("D{n}"), black, DiagramInvolution::Identity),
            row_fixture(
                "DIII'",
                format!("so{}", 2 * n),
                format!("so{}", 2 * n),
                format!("so*({})", 2 * n),
                format!("gl{n}"),
                format!("C{m}"),
                format!("C{m}"),
                format!("B{m}"),
                format!("sp{n}"),
                "n even, red != variety".into(),
            ),
        ));
    }
    // exceptional rows
    let exceptional: Vec<Table2Instance> = vec![
        instance(
            "EI",
            String::new(),
            split_spec("E6"),
            row_fixture(
                "EI", "e6".into(), "e6".into(), "e6(6)".into(), "sp8".into(),
                "E6".into(), "E6".into(), "E6".into(), "e6".into(), "split".into(),
            ),
        ),
        instance(
            "EII",
            String::new(),
            satake_spec("E6", vec![], DiagramInvolution::Flip),
            row_fixture(
                "EII", "e6".into(), "e6".into(), "e6(2)".into(), "sl6+sl2".into(),
                "F4".into(), "F4".into(), "F4".into(), "f4".into(), "quasisplit".into(),
            ),
        ),
        instance(
            "EIII",
            String::new(),
            satake_spec("E6", vec![2, 3, 4], DiagramInvolution::Flip),
            row_fixture(
                "EIII", "e6".into(), "e6".into(), "e6(-14)".into(), "so11+C".into(),
                "BC2".into(), "B2".into(), "C2".into(), "so5".into(),
                "red != variety".into(),
            ),
        ),
        instance(
            "EIV",
            String::new(),
            satake_spec("E6", vec![1, 2, 3, 4], DiagramInvolution::Identity),
            row_fixture(
                "EIV", "e6".into(), "e6".into(), "e6(-26)".into(), "f4".into(),
                "A2".into(), "A2".into(), "A2".into(), "sl3".into(), "".into(),
            ),
        ),
        instance(
            "EV",
            String::new(),
            split_spec("E7"),
            row_fixture(
                "EV", "e7".into(), "e7".into(), "e7(7)".into(), "sl8".into(),
                "E7".into(), "E7".into(), "E7".into(), "e7".into(), "split".into(),
            ),
        ),
        instance(
            "EVI",
            String::new(),
            satake_spec("E7", vec![1, 4, 6], DiagramInvolution::Identity),
            row_fixture(
                "EVI", "e7".into(), "e7".into(), "e7(-5)".into(), "so6+sl2".into(),
                "F4".into(), "F4".into(), "F4".into(), "f4".into(), "".into(),
            ),
        ),
        instance(
            "EVII",
            String::new(),
            satake_spec("E7", vec![1, 2, 3, 4], DiagramInvolution::Identity),
            row_fixture(
                "EVII", "e7".into(), "e7".into(), "e7(-25)".into(), "e6+C".into(),
                "C3".into(), "C3".into(), "B3".into(), "sp6".into(),
                "red != variety".into(),
            ),
        ),
        instance(
            "EVIII",
            String::new(),
            split_spec("E8"),
            row_fixture(
                "EVIII", "e8".into(), "e8".into(), "e8(8)".into(), "so16".into(),
                "E8".into(), "E8".into(), "E8".into(), "e8".into(), "split".into(),
            ),
        ),
        instance(
            "EIX",
            String::new(),
            satake_spec("E8", vec![1, 2, 3, 4], DiagramInvolution::Identity),
            row_fixture(
                "EIX", "e8".into(), "e8".into(), "e8(-24)".into(), "e7+sl2".into(),
                "F4".into(), "F4".into(), "F4".into(), "f4".into(), "".into(),
            ),
        ),
        instance(
            "FI",
            String::new(),
            split_spec("F4"),
            row_fixture(
                "FI", "f4".into(), "f4".into(), "f4(4)".into(), "sp6+sl2".into(),
                "F4".into(), "F4".into(), "F4".into(), "f4".into(), "split".into(),
            ),
        ),
        instance(
            "FII",
            String::new(),
            satake_spec("F4", vec![0, 1, 2], DiagramInvolution::Identity),
            row_fixture(
                "FII", "f4".into(), "f4".into(), "f4(-20)".into(), "so9".into(),
                "BC1".into(), "A1".into(), "A1".into(), "sl2".into(), "".into(),
            ),
        ),
        instance(
            "G",
            String::new(),
            split_spec("G2"),
            row_fixture(
                "G", "g2".into(), "g2".into(), "g2(2)".into(), "sl2+sl2".into(),
                "G2".into(), "G2".into(), "G2".into(), "g2".into(), "split".into(),
            ),
        ),
    ];
    let rank_of = |g: &str| -> usize {
        match g {
            "e6" => 6,
            "e7" => 7,
            "e8" => 8,
            "f4" => 4,
            "g2" => 2,
            _ => 0,
        }
    };
    for inst in exceptional {
        if rank_of(&inst.fixture.g_type) <= r {
            out.push(inst);
        }
    }
    out
}

pub fn check_table2_instance(inst: &Table2Instance) -> Table2Report {
    let built = build_from_spec(&inst.spec)
        .and_then(restricted_system_ref)
        .map_err(|e| e.to_string())
        .and_then(|rd| {
            let dual = dual_group_datum(&rd).map_err(|e| e.to_string())?;
            Ok((rd, dual))
        });
    match built {
        Ok((rd, dual)) => {
            let computed = ComputedColumns {
                delta_theta: dual.delta_theta_type.clone(),
                delta_theta_red: dual.delta_theta_red_type.clone(),
                delta_variety: dual.delta_variety_type.clone(),
                dual_algebra: dual.dual_algebra.clone(),
                flag: split_flag(&rd.datum).to_string(),
            };
            let mut mismatches = Vec::new();
            let pairs = [
                ("delta_theta", &computed.delta_theta, &inst.expected.delta_theta),
                ("delta_theta_red", &computed.delta_theta_red, &inst.expected.delta_theta_red),
                ("delta_variety", &computed.delta_variety, &inst.expected.delta_variety),
                ("dual_algebra", &computed.dual_algebra, &inst.expected.dual_algebra),
                ("flag", &computed.flag, &inst.expected.flag),
            ];
            for (name, got, want) in pairs {
                if got != want {
                    mismatches.push(format!("{name}: computed {got}, expected {want}"));
                }
            }
            let status = if mismatches.is_empty() { "match" } else { "mismatch" };
            Table2Report {
                row: inst.row.clone(),
                params: inst.params.clone(),
                status: status.into(),
                computed: Some(computed),
                expected: inst.expected.clone(),
                mismatches,
                little_weyl_order: Some(rd.little_weyl_order.to_string()),
                little_weyl_method: Some(rd.little_weyl_method.to_string()),
            }
        }
        Err(e) => Table2Report {
            row: inst.row.clone(),
            params: inst.params.clone(),
            status: "unconstructed".into(),
            computed: None,
            expected: inst.expected.clone(),
            mismatches: vec![e],
            little_weyl_order: None,
            little_weyl_method: None,
        },
    }
}

fn restricted_system_ref(
    d: InvolutionDatum,
) -> Result<crate::involution::RestrictedData, crate::involution::InvolutionError> {
    restricted_system(&d)
}

pub fn run_table2(max_rank: usize) -> Vec<Table2Report> {
    par_map(table2_instances(max_rank), |inst| check_table2_instance(&inst))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table1_all_match_small() {
        for report in run_table1(5) {
            assert_eq!(report.status, "match", "{report:?}");
        }
    }

    #[test]
    fn table2_classical_small_ranks() {
        for inst in table2_instances(4) {
            let report = check_table2_instance(&inst);
            assert_eq!(
                report.status, "match",
                "{} {}: {:?}",
                report.row, report.params, report.mismatches
            );
        }
    }

    #[test]
    fn corrupted_fixture_is_detected() {
        let mut insts = table2_instances(3);
        let inst = insts
            .iter_mut()
            .find(|i| i.row == "AI")
            .expect("AI row present");
        inst.expected.dual_algebra = "sp999".into();
        let report = check_table2_instance(inst);
        assert_eq!(report.status, "mismatch");
    }
}
