// Copyright 2026 The prsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "prsim/worker_pool.hpp"

#include <stdexcept>

namespace prsim {

WorkerPool::WorkerPool(int threads) {
    if (threads < 1) {
        throw std::invalid_argument("WorkerPool needs at least one thread");
    }
    helpers_.reserve(threads - 1);
    for (int t = 1; t < threads; ++t) {
        helpers_.emplace_back([this] { helper_loop(); });
    }
}

WorkerPool::~WorkerPool() {
    {
        std::lock_guard<std::mutex> lock(mutex_);
        stopping_ = true;
    }
    wake_.notify_all();
    for (std::thread &t : helpers_) {
        t.join();
    }
}

void WorkerPool::drain() {
    for (;;) {
        int k = next_task_.fetch_add(1);
        if (k >= job_tasks_) {
            return;
        }
        try {
            (*job_)(k);
        } catch (...) {
            std::lock_guard<std::mutex> lock(mutex_);
            if (!error_) {
                error_ = std::current_exception();
            }
        }
    }
}

void WorkerPool::helper_loop() {
    std::uint64_t seen = 0;
    for (;;) {
        {
            std::unique_lock<std::mutex> lock(mutex_);
            wake_.wait(lock, [&] { return stopping_ || generation_ != seen; });
            if (stopping_) {
                return;
            }
            seen = generation_;
        }
        drain();
        {
            std::lock_guard<std::mutex> lock(mutex_);
            --active_helpers_;
        }
        done_.notify_one();
    }
}

void WorkerPool::run(int tasks, const std::function<void(int)> &fn) {
    if (tasks <= 0) {
        return;
    }
    if (helpers_.empty() || tasks == 1) {
        for (int k = 0; k < tasks; ++k) {
            fn(k);
        }
        return;
    }
    {
        std::lock_guard<std::mutex> lock(mutex_);
        job_ = &fn;
        job_tasks_ = tasks;
        next_task_.store(0);
        error_ = nullptr;
        active_helpers_ = static_cast<int>(helpers_.size());
        ++generation_;
    }
    wake_.notify_all();
    drain();
    std::exception_ptr error;
    {
        std::unique_lock<std::mutex> lock(mutex_);
        done_.wait(lock, [&] { return active_helpers_ == 0; });
        job_ = nullptr;
        error = error_;
    }
    if (error) {
        std::rethrow_exception(error);
    }
}

}  // namespace prsim
