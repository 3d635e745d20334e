use shadowcalc::classify::census::run_census;

fn main() {
    for e in run_census(3) {
        let b = e.class.rep.poly.boundary_circles().len();
        println!(
            "{} {:?} type={} boundary={} specs={} branchings={} cert={:?}",
            e.label,
            e.p_label,
            e.class.graph_type,
            b,
            e.class.specs.len(),
            e.class.branching_count,
            e.certificate,
        );
    }
}
