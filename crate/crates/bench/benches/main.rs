use criterion::{black_box, criterion_group, criterion_main, Criterion};

use sgsize_core::natwin::WindowSet;
use sgsize_core::notions;
use sgsize_core::semigroup::{enumerate_semigroups, Dedupe};
use sgsize_core::setfam::{
    all_families, classify, enumerate_filters, enumerate_stacks, mesh, upward_closure, Family,
};
use sgsize_core::theorems::suite::{run_suite, SuiteConfig};
use sgsize_core::CayleyTable;

fn family_algebra(c: &mut Criterion) {
    let mut group = c.benchmark_group("family_algebra");
    group.bench_function("closure_mesh_classify_all_n4", |b| {
        b.iter(|| {
            let mut acc = 0u64;
            for fam in all_families(4).unwrap() {
                let closed = upward_closure(fam);
                acc ^= mesh(closed).raw();
                acc ^= classify(fam).is_stack as u64;
            }
            black_box(acc)
        })
    });
    group.bench_function("mesh_involution_n6", |b| {
        let fam = Family::from_raw(0xdead_beef_dead_bee0 & !1, 6);
        b.iter(|| black_box(mesh(mesh(black_box(fam)))))
    });
    group.finish();
}

fn enumeration(c: &mut Criterion) {
    let mut group = c.benchmark_group("enumeration");
    group.bench_function("stacks_n4", |b| {
        b.iter(|| black_box(enumerate_stacks(4).unwrap().len()))
    });
    group.bench_function("semigroups_n3_raw", |b| {
        b.iter(|| black_box(enumerate_semigroups(3, Dedupe::None).unwrap().len()))
    });
    group.sample_size(10);
    group.bench_function("semigroups_n4_iso", |b| {
        b.iter(|| black_box(enumerate_semigroups(4, Dedupe::Iso).unwrap().len()))
    });
    group.finish();
}

fn relative_families(c: &mut Criterion) {
    let tables = enumerate_semigroups(3, Dedupe::Iso).unwrap();
    let filters = enumerate_filters(3).unwrap();
    c.bench_function("rel_families_all_filter_pairs_order3", |b| {
        b.iter(|| {
            let mut acc = 0u64;
            for t in &tables {
                for &f in &filters {
                    for &g in &filters {
                        acc ^= notions::rel_syn_family(t, f.as_stack(), g.as_stack())
                            .unwrap()
                            .raw();
                        acc ^= notions::rel_thick_family(t, f.as_stack(), g.as_stack())
                            .unwrap()
                            .raw();
                    }
                }
            }
            black_box(acc)
        })
    });
}

fn suite_order_two(c: &mut Criterion) {
    let mut group = c.benchmark_group("suite");
    group.sample_size(10);
    group.bench_function("all_claims_order2", |b| {
        let config = SuiteConfig::all_claims(2, Dedupe::None);
        b.iter(|| black_box(run_suite(&config).unwrap().summary.pass))
    });
    group.finish();
}

fn window_scans(c: &mut Criterion) {
    let n = 1_000_000u64;
    let evens = WindowSet::from_elements(n, (1..=n / 2).map(|i| 2 * i)).unwrap();
    let mut group = c.benchmark_group("window_scans_1e6");
    group.bench_function("gap_bound", |b| b.iter(|| black_box(evens.gap_bound())));
    group.bench_function("max_block_run", |b| {
        b.iter(|| black_box(evens.max_block_run()))
    });
    group.bench_function("ps_witness", |b| {
        b.iter(|| black_box(evens.ps_witness(2, 10_000)))
    });
    group.bench_function("find_ap_k9", |b| b.iter(|| black_box(evens.find_ap(9))));
    group.finish();
}

fn checker_throughput(c: &mut Criterion) {
    let t = CayleyTable::right_zero(3);
    let filters = enumerate_filters(3).unwrap();
    c.bench_function("lemma_3_8_one_pair", |b| {
        b.iter(|| {
            black_box(
                sgsize_core::theorems::check_lemma_3_8(&t, filters[0], filters[4])
                    .unwrap()
                    .len(),
            )
        })
    });
}

criterion_group!(
    benches,
    family_algebra,
    enumeration,
    relative_families,
    suite_order_two,
    window_scans,
    checker_throughput
);
criterion_main!(benches);
