fn main() {
    let start = std::time::Instant::now();
    let reports = symvar::tables::run_table2(8);
    let mut bad = 0;
    for r in &reports {
        if r.status != "match" {
            bad += 1;
            println!("{} {} -> {}: {:?}", r.row, r.params, r.status, r.mismatches);
        }
    }
    println!("total rows: {}, non-match: {}, elapsed: {:?}", reports.len(), bad, start.elapsed());
    let t1 = std::time::Instant::now();
    let reports1 = symvar::tables::run_table1(8);
    let bad1 = reports1.iter().filter(|r| r.status != "match").count();
    println!("table1 rows: {}, non-match: {}, elapsed: {:?}", reports1.len(), bad1, t1.elapsed());
}
