#include "core/common.hpp"

#include <atomic>
#include <condition_variable>
#include <cstdlib>
#include <mutex>
#include <thread>

namespace afidaf {

namespace {

std::atomic<bool> g_finite_checks{false};

int env_thread_cap() {
  const char* v = std::getenv("AFIDAF_THREADS");
  if (!v) return 0;
  int n = std::atoi(v);
  return n > 0 ? n : 1;
}

// Lazily started pool of persistent workers. Work items are contiguous
// ranges; the caller blocks until its batch completes.
class Pool {
 public:
  static Pool& instance() {
    static Pool pool;
    return pool;
  }

  int size() const { return static_cast<int>(workers_.size()) + 1; }

  void run(std::int64_t n, std::int64_t grain,
           const std::function<void(std::int64_t, std::int64_t)>& fn) {
    const int nw = size();
    const std::int64_t max_chunks = (n + grain - 1) / grain;
    const std::int64_t chunks = std::min<std::int64_t>(nw, max_chunks);
    // Nested calls (an op inside a parallelized region) run inline; only one
    // top-level job owns the pool at a time.
    if (chunks <= 1 || inside_job_) {
      fn(0, n);
      return;
    }
    std::lock_guard<std::mutex> job_lock(job_mu_);
    inside_job_ = true;
    std::unique_lock<std::mutex> lk(mu_);
    job_fn_ = &fn;
    job_n_ = n;
    job_chunks_ = chunks;
    next_chunk_ = 0;
    done_chunks_ = 0;
    ++generation_;
    cv_work_.notify_all();
    // The calling thread participates too.
    lk.unlock();
    work_on_job();
    lk.lock();
    cv_done_.wait(lk, [&] { return done_chunks_ == job_chunks_; });
    job_fn_ = nullptr;
    inside_job_ = false;
  }

 private:
  Pool() {
    int cap = env_thread_cap();
    unsigned hw = std::thread::hardware_concurrency();
    int n = cap > 0 ? cap : static_cast<int>(hw ? hw : 1);
    for (int i = 0; i < n - 1; ++i)
      workers_.emplace_back([this] { worker_loop(); });
  }

  ~Pool() {
    {
      std::lock_guard<std::mutex> lk(mu_);
      stop_ = true;
      cv_work_.notify_all();
    }
    for (auto& t : workers_) t.join();
  }

  void worker_loop() {
    std::uint64_t seen = 0;
    for (;;) {
      {
        std::unique_lock<std::mutex> lk(mu_);
        cv_work_.wait(lk, [&] { return stop_ || generation_ != seen; });
        if (stop_) return;
        seen = generation_;
      }
      work_on_job();
    }
  }

  void work_on_job() {
    const bool was_inside = inside_job_;
    inside_job_ = true;
    for (;;) {
      std::int64_t c = next_chunk_.fetch_add(1);
      std::int64_t chunks, n;
      const std::function<void(std::int64_t, std::int64_t)>* fn;
      {
        std::lock_guard<std::mutex> lk(mu_);
        chunks = job_chunks_;
        n = job_n_;
        fn = job_fn_;
      }
      if (!fn || c >= chunks) return;
      const std::int64_t lo = c * n / chunks;
      const std::int64_t hi = (c + 1) * n / chunks;
      if (lo < hi) (*fn)(lo, hi);
      std::lock_guard<std::mutex> lk(mu_);
      if (++done_chunks_ == job_chunks_) cv_done_.notify_all();
    }
  }

  static thread_local bool inside_job_;

  std::vector<std::thread> workers_;
  std::mutex job_mu_;
  std::mutex mu_;
  std::condition_variable cv_work_, cv_done_;
  bool stop_ = false;
  std::uint64_t generation_ = 0;
  const std::function<void(std::int64_t, std::int64_t)>* job_fn_ = nullptr;
  std::int64_t job_n_ = 0;
  std::int64_t job_chunks_ = 0;
  std::atomic<std::int64_t> next_chunk_{0};
  std::int64_t done_chunks_ = 0;
};

thread_local bool Pool::inside_job_ = false;

}  // namespace

int worker_count() { return Pool::instance().size(); }

void parallel_for(std::int64_t n, const std::function<void(std::int64_t, std::int64_t)>& fn,
                  std::int64_t grain) {
  if (n <= 0) return;
  if (n <= grain || worker_count() == 1) {
    fn(0, n);
    return;
  }
  Pool::instance().run(n, grain, fn);
}

void set_finite_checks(bool on) { g_finite_checks.store(on); }
bool finite_checks_enabled() { return g_finite_checks.load(std::memory_order_relaxed); }

}  // namespace afidaf
