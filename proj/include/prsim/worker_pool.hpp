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

#pragma once

#include <atomic>
#include <condition_variable>
#include <cstdint>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace prsim {

/// Fixed set of threads that execute fn(0..tasks-1) and rendezvous before run() returns.
/// The calling thread takes part in the work. The first exception thrown by a task is
/// rethrown from run().
class WorkerPool {
   public:
    explicit WorkerPool(int threads);
    ~WorkerPool();

    WorkerPool(const WorkerPool &) = delete;
    WorkerPool &operator=(const WorkerPool &) = delete;

    int threads() const { return static_cast<int>(helpers_.size()) + 1; }

    void run(int tasks, const std::function<void(int)> &fn);

   private:
    void helper_loop();
    void drain();

    std::vector<std::thread> helpers_;
    std::mutex mutex_;
    std::condition_variable wake_;
    std::condition_variable done_;
    std::uint64_t generation_ = 0;
    bool stopping_ = false;
    int active_helpers_ = 0;

    const std::function<void(int)> *job_ = nullptr;
    int job_tasks_ = 0;
    std::atomic<int> next_task_{0};
    std::exception_ptr error_;
};

}  // namespace prsim
