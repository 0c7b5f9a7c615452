use curtains::braid::{BandGeneratorForm, BraidWord};
use curtains::build::{build_curtain, BuildOptions, MonodromyData};

fn main() {
    let m = MonodromyData {
        cover_degree: 3,
        braid_degree: 2,
        beta: BraidWord::from_signed(2, &[1, 1, 1]).unwrap(),
        images: vec![
            BandGeneratorForm::bare(3, 1, 1).unwrap(),
            BandGeneratorForm::bare(3, 2, 1).unwrap(),
        ],
    };
    let t0 = std::time::Instant::now();
    let out = build_curtain(
        &m,
        &BuildOptions {
            full_validation: false,
            strict_reject_certified: false,
        },
    );
    match out {
        Ok(o) => {
            println!("build ok in {:?}, certified={}", t0.elapsed(), o.plan.certified);
            let t1 = std::time::Instant::now();
            let report = curtains::curtain::validate_curtain(&o.curtain, false);
            println!("validate in {:?}: valid={}", t1.elapsed(), report.is_valid());
            if !report.is_valid() {
                println!("{report}");
            }
        }
        Err(e) => println!("build failed in {:?}: {e}", t0.elapsed()),
    }
}
