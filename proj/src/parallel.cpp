#include "odg/parallel.hpp"

#include <algorithm>
#include <condition_variable>
#include <cstdlib>
#include <mutex>
#include <thread>
#include <vector>

namespace odg {

namespace {

thread_local bool g_in_pool_job = false;

// Nested parallel_for calls run inline; only the outermost level fans out.
class Pool {
public:
    explicit Pool(int workers) {
        for (int i = 0; i < workers; ++i) {
            threads_.emplace_back([this] { worker_loop(); });
        }
    }

    ~Pool() {
        {
            std::lock_guard<std::mutex> lk(m_);
            stop_ = true;
        }
        cv_.notify_all();
        for (auto& t : threads_) t.join();
    }

    void run(int jobs, const std::function<void(int)>& fn) {
        {
            std::lock_guard<std::mutex> lk(m_);
            job_fn_ = &fn;
            next_job_ = 0;
            total_jobs_ = jobs;
            pending_ = jobs;
        }
        cv_.notify_all();
        // Caller participates so progress never depends on free workers.
        for (;;) {
            int job;
            {
                std::lock_guard<std::mutex> lk(m_);
                if (next_job_ >= total_jobs_) break;
                job = next_job_++;
            }
            fn(job);
            std::lock_guard<std::mutex> lk(m_);
            if (--pending_ == 0) done_cv_.notify_all();
        }
        std::unique_lock<std::mutex> lk(m_);
        done_cv_.wait(lk, [this] { return pending_ == 0; });
        job_fn_ = nullptr;
    }

private:
    void worker_loop() {
        g_in_pool_job = true;
        std::unique_lock<std::mutex> lk(m_);
        for (;;) {
            cv_.wait(lk, [this] { return stop_ || (job_fn_ && next_job_ < total_jobs_); });
            if (stop_) return;
            while (job_fn_ && next_job_ < total_jobs_) {
                const int job = next_job_++;
                const auto* fn = job_fn_;
                lk.unlock();
                (*fn)(job);
                lk.lock();
                if (--pending_ == 0) done_cv_.notify_all();
            }
        }
    }

    std::mutex m_;
    std::condition_variable cv_;
    std::condition_variable done_cv_;
    std::vector<std::thread> threads_;
    const std::function<void(int)>* job_fn_ = nullptr;
    int next_job_ = 0;
    int total_jobs_ = 0;
    int pending_ = 0;
    bool stop_ = false;
};

Pool& pool() {
    static Pool p(std::max(1, thread_count() - 1));
    return p;
}

} // namespace

int thread_count() {
    static const int n = [] {
        if (const char* env = std::getenv("ODG_THREADS")) {
            const int v = std::atoi(env);
            if (v > 0) return std::min(v, 64);
        }
        const unsigned hw = std::thread::hardware_concurrency();
        return static_cast<int>(std::min<unsigned>(hw ? hw : 1, 8));
    }();
    return n;
}

void parallel_for(std::size_t n, const std::function<void(int, std::size_t, std::size_t)>& fn) {
    if (n == 0) return;
    const int workers = thread_count();
    const std::size_t chunks = std::min<std::size_t>(n, static_cast<std::size_t>(workers) * 4);
    if (chunks <= 1 || workers <= 1 || g_in_pool_job) {
        fn(0, 0, n);
        return;
    }
    const std::size_t per = (n + chunks - 1) / chunks;
    const bool was_in_job = g_in_pool_job;
    g_in_pool_job = true; // inline any nested parallel_for from the caller thread
    std::function<void(int)> job = [&](int c) {
        const std::size_t b = static_cast<std::size_t>(c) * per;
        const std::size_t e = std::min(n, b + per);
        if (b < e) fn(c, b, e);
    };
    pool().run(static_cast<int>(chunks), job);
    g_in_pool_job = was_in_job;
}

void parallel_for_each(std::size_t n, const std::function<void(std::size_t)>& fn) {
    parallel_for(n, [&](int, std::size_t b, std::size_t e) {
        for (std::size_t i = b; i < e; ++i) fn(i);
    });
}

} // namespace odg
