// B5GRoam - error taxonomy
// Copyright (c) 2026 B5GRoam Developers
// MIT License

#pragma once

#include <stdexcept>
#include <string>

namespace b5g {

enum class Errc {
    InverseOfZero,
    WidthMismatch,
    RangeViolation,
    ParameterMismatch,
    HashMismatch,
    TotalMismatch,
    NoContributions,
    ParamsTooSmall,
    UnsatisfiedConstraints,
    ArityMismatch,
    UnknownAccount,
    InsufficientBalance,
    WrongPhase,
    AlreadyCommitted,
    CommitmentUnattested,
    ProofInvalid,
    InsufficientEscrow,
    VkMismatch,
    MalformedTx,
    EmptyQueue,
    RootMismatch,
    InnerProofInvalid,
    AttestationInvalid,
    NotCommitted,
    ScenarioInvalid,
    UnexpectedVerdict,
    UnknownBackend,
    IOFailure,
    SerializationError,
};

inline const char* errc_name(Errc c) {
    switch (c) {
        case Errc::InverseOfZero: return "InverseOfZero";
        case Errc::WidthMismatch: return "WidthMismatch";
        case Errc::RangeViolation: return "RangeViolation";
        case Errc::ParameterMismatch: return "ParameterMismatch";
        case Errc::HashMismatch: return "HashMismatch";
        case Errc::TotalMismatch: return "TotalMismatch";
        case Errc::NoContributions: return "NoContributions";
        case Errc::ParamsTooSmall: return "ParamsTooSmall";
        case Errc::UnsatisfiedConstraints: return "UnsatisfiedConstraints";
        case Errc::ArityMismatch: return "ArityMismatch";
        case Errc::UnknownAccount: return "UnknownAccount";
        case Errc::InsufficientBalance: return "InsufficientBalance";
        case Errc::WrongPhase: return "WrongPhase";
        case Errc::AlreadyCommitted: return "AlreadyCommitted";
        case Errc::CommitmentUnattested: return "CommitmentUnattested";
        case Errc::ProofInvalid: return "ProofInvalid";
        case Errc::InsufficientEscrow: return "InsufficientEscrow";
        case Errc::VkMismatch: return "VkMismatch";
        case Errc::MalformedTx: return "MalformedTx";
        case Errc::EmptyQueue: return "EmptyQueue";
        case Errc::RootMismatch: return "RootMismatch";
        case Errc::InnerProofInvalid: return "InnerProofInvalid";
        case Errc::AttestationInvalid: return "AttestationInvalid";
        case Errc::NotCommitted: return "NotCommitted";
        case Errc::ScenarioInvalid: return "ScenarioInvalid";
        case Errc::UnexpectedVerdict: return "UnexpectedVerdict";
        case Errc::UnknownBackend: return "UnknownBackend";
        case Errc::IOFailure: return "IOFailure";
        case Errc::SerializationError: return "SerializationError";
    }
    return "Unknown";
}

class B5gError : public std::runtime_error {
  public:
    B5gError(Errc code, const std::string& what)
        : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

    Errc code() const { return code_; }

  private:
    Errc code_;
};

} // namespace b5g
