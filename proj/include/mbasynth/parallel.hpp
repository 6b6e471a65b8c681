// Data-parallel map over an index range.

#ifndef MBASYNTH_PARALLEL_HPP
#define MBASYNTH_PARALLEL_HPP

#include <cstdint>
#include <functional>

namespace mbasynth {

/// body(worker, begin, end) for a partition of [0, count) into contiguous
/// ranges; worker < workers(). Bodies for different ranges may run
/// concurrently. Returns once every range is done; rethrows the first
/// exception raised by a body.
using RangeBody = std::function<void(unsigned worker, std::uint64_t begin, std::uint64_t end)>;

class ParallelBackend {
public:
    virtual ~ParallelBackend() = default;
    virtual unsigned workers() const = 0;
    virtual void run(std::uint64_t count, const RangeBody& body) = 0;
};

class SequentialBackend final : public ParallelBackend {
public:
    unsigned workers() const override { return 1; }
    void run(std::uint64_t count, const RangeBody& body) override {
        if (count != 0) body(0, 0, count);
    }
};

/// Splits each range over `workers` threads; ranges shorter than
/// `min_parallel` run inline on the caller.
class ThreadBackend final : public ParallelBackend {
public:
    /// workers == 0 picks std::thread::hardware_concurrency().
    explicit ThreadBackend(unsigned workers, std::uint64_t min_parallel = 1 << 14);
    unsigned workers() const override { return workers_; }
    void run(std::uint64_t count, const RangeBody& body) override;

private:
    unsigned workers_;
    std::uint64_t min_parallel_;
};

}  // namespace mbasynth

#endif
