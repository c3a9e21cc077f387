use criterion::{criterion_group, criterion_main, Criterion, Throughput};
use std::hint::black_box;

use losim_bench::{link_batch, urban_city};
use losim_core::los::is_los;
use losim_core::Layout;

fn bench_los(c: &mut Criterion) {
    let mut group = c.benchmark_group("los");
    for layout in [Layout::Rm, Layout::Ru] {
        let city = urban_city(layout, 1);
        let links = link_batch(&city, 1000, 2);
        group.throughput(Throughput::Elements(links.len() as u64));
        group.bench_function(format!("is_los_{layout}"), |b| {
            b.iter(|| {
                let mut clear = 0u32;
                for (abs, ue) in &links {
                    clear += is_los(&city, abs, ue) as u32;
                }
                black_box(clear)
            });
        });
    }
    group.finish();
}

criterion_group!(benches, bench_los);
criterion_main!(benches);
